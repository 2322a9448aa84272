#include <gtest/gtest.h>

#include <bit>
#include <cstring>

#include "numrad/cmatrix.hpp"
#include "test_util.hpp"

namespace numrad {
namespace {

using testing::random_matrix;

const cplx I{0.0, 1.0};

TEST(CMatrix, RejectsZeroDimensionAndNonFinite) {
  EXPECT_THROW(CMatrix(0), std::invalid_argument);
  EXPECT_THROW(CMatrix(2, {1.0, 2.0, 3.0}), DimensionMismatch);
  EXPECT_THROW(CMatrix(1, {cplx{std::nan(""), 0.0}}), std::invalid_argument);
  EXPECT_THROW(CMatrix::from_rows({{1, 2}, {3}}), DimensionMismatch);
}

TEST(CMatrix, RingExamples) {
  const CMatrix id = CMatrix::identity(2);
  EXPECT_EQ(id * id, id);
  const CMatrix nil = CMatrix::from_rows({{0, 1}, {0, 0}});
  EXPECT_EQ(nil * nil, CMatrix::zeros(2));
  const CMatrix a = CMatrix::from_rows({{1, 4}, {1, 1}});
  EXPECT_EQ(a * a, CMatrix::from_rows({{5, 8}, {2, 5}}));
  EXPECT_EQ(a + a, 2.0 * a);
  EXPECT_EQ(a - a, CMatrix::zeros(2));
  EXPECT_EQ(scale(a, I)(0, 1), 4.0 * I);
}

TEST(CMatrix, DimensionMismatchReportsBothSides) {
  try {
    (void)(CMatrix(2) * CMatrix(3));
    FAIL();
  } catch (const DimensionMismatch& e) {
    EXPECT_EQ(e.lhs(), 2U);
    EXPECT_EQ(e.rhs(), 3U);
  }
}

TEST(CMatrix, AdjointExamples) {
  EXPECT_EQ(adjoint(CMatrix::from_rows({{I, 0}, {0, 0}})), CMatrix::from_rows({{-I, 0}, {0, 0}}));
  EXPECT_EQ(adjoint(CMatrix::from_rows({{1, 4}, {1, 1}})), CMatrix::from_rows({{1, 1}, {4, 1}}));
  const CMatrix h = hermitian_part(random_matrix(3, 4));
  EXPECT_EQ(adjoint(h), h);
}

TEST(CMatrix, AdjointInvolutionAndProductRule) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const CMatrix a = random_matrix(seed, 5);
    const CMatrix b = random_matrix(seed + 100, 5);
    EXPECT_EQ(adjoint(adjoint(a)), a);
    EXPECT_LE(testing::rel_frob_error(adjoint(a * b), adjoint(b) * adjoint(a)), 1e-12);
  }
}

TEST(CMatrix, CartesianPartsExamples) {
  const auto p = cartesian_parts(CMatrix::from_rows({{0, 2}, {0, 0}}));
  EXPECT_EQ(p.re, CMatrix::from_rows({{0, 1}, {1, 0}}));
  EXPECT_EQ(p.im, CMatrix::from_rows({{0, -I}, {I, 0}}));

  const CMatrix h = hermitian_part(random_matrix(7, 3));
  const auto ph = cartesian_parts(h);
  EXPECT_LE(frobenius_norm(ph.re - h), 1e-15);
  EXPECT_LE(frobenius_norm(ph.im), 1e-15);

  const auto pk = cartesian_parts(I * h);
  EXPECT_LE(frobenius_norm(pk.re), 1e-15);
  EXPECT_LE(frobenius_norm(pk.im - h), 1e-15);
}

TEST(CMatrix, CartesianPartsReconstructAndAreHermitian) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const CMatrix a = random_matrix(seed, 6);
    const auto p = cartesian_parts(a);
    EXPECT_EQ(hermitian_residual(p.re), 0.0);
    EXPECT_EQ(hermitian_residual(p.im), 0.0);
    EXPECT_LE(max_abs_entry(p.re + I * p.im - a), 1e-14);
  }
}

TEST(CMatrix, Block2Examples) {
  const CMatrix one = CMatrix::from_rows({{1}});
  const CMatrix zero = CMatrix::zeros(1);
  EXPECT_EQ(block2(zero, one, zero, zero), CMatrix::from_rows({{0, 1}, {0, 0}}));
  EXPECT_EQ(block2(one, zero, zero, one), CMatrix::identity(2));
  EXPECT_THROW(block2(one, CMatrix(2), one, one), DimensionMismatch);
}

// Test-side FNV-1a over the documented byte layout.
std::uint64_t oracle_digest(const std::vector<CMatrix>& ms) {
  std::vector<unsigned char> bytes;
  auto push = [&](std::uint64_t v) {
    for (int b = 0; b < 8; ++b) bytes.push_back(static_cast<unsigned char>(v >> (8 * b)));
  };
  for (const CMatrix& m : ms) {
    push(m.n());
    for (const cplx& z : m.data()) {
      for (double d : {z.real(), z.imag()}) {
        if (d == 0.0) d = 0.0;
        std::uint64_t u;
        std::memcpy(&u, &d, sizeof u);
        push(u);
      }
    }
  }
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

TEST(CMatrix, DigestMatchesOracleAndIgnoresZeroSign) {
  const std::vector<CMatrix> in{CMatrix::from_rows({{1, 4}, {1, 1}}), random_matrix(1, 3)};
  EXPECT_EQ(canonical_digest(in), oracle_digest(in));
  const std::vector<CMatrix> pos{CMatrix::from_rows({{cplx{0.0, 0.0}}})};
  const std::vector<CMatrix> neg{CMatrix::from_rows({{cplx{-0.0, -0.0}}})};
  EXPECT_EQ(canonical_digest(pos), canonical_digest(neg));
  EXPECT_EQ(digest_hex(0x1234abcdULL), "000000001234abcd");
  const std::vector<CMatrix> swapped{in[1], in[0]};
  EXPECT_NE(canonical_digest(in), canonical_digest(swapped));
}

TEST(CMatrix, VectorHelpers) {
  const std::vector<cplx> x{1.0, I};
  EXPECT_EQ(inner(x, x), cplx(2.0));
  EXPECT_DOUBLE_EQ(vector_norm(x), std::sqrt(2.0));
  const auto y = matvec(CMatrix::from_rows({{0, 1}, {1, 0}}), x);
  EXPECT_EQ(y[0], I);
  EXPECT_EQ(y[1], cplx(1.0));
  EXPECT_EQ(trace(CMatrix::from_rows({{1, 4}, {1, I}})), cplx(1.0, 1.0));
}

}  // namespace
}  // namespace numrad
