#include <gtest/gtest.h>

#include "numrad/eig.hpp"
#include "numrad/functional.hpp"
#include "test_util.hpp"

namespace numrad {
namespace {

using testing::random_matrix;
using testing::rel_frob_error;

void expect_entries_near(const CMatrix& a, const CMatrix& b, double tol) {
  EXPECT_LE(max_abs_entry(a - b), tol);
}

TEST(OpNorm, Examples) {
  EXPECT_NEAR(op_norm(CMatrix::from_rows({{1, 4}, {1, 1}})), 0.5 * (5.0 + std::sqrt(13.0)), 1e-13);
  EXPECT_NEAR(op_norm(CMatrix::identity(5)), 1.0, 1e-15);
  EXPECT_NEAR(op_norm(CMatrix::from_rows({{0, 3, 0}, {0, 0, 0}, {0, 0, 1}})), 3.0, 1e-14);
  EXPECT_EQ(op_norm(CMatrix::zeros(3)), 0.0);
}

TEST(OpNorm, MatchesLargestSingularValue) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const CMatrix a = random_matrix(seed, 7);
    EXPECT_NEAR(op_norm(a), svd(a).singular_values[0], 1e-12);
  }
}

TEST(OpNorm, UnitaryInvariance) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const CMatrix a = random_matrix(seed, 6);
    const CMatrix u = random_matrix(seed + 50, 6, Family::unitary);
    const CMatrix v = random_matrix(seed + 90, 6, Family::unitary);
    EXPECT_NEAR(op_norm(u * a * v), op_norm(a), 1e-9);
  }
}

TEST(PsdCalculus, Examples) {
  expect_entries_near(sqrt_psd(CMatrix::diagonal(std::vector<double>{0, 9, 1})),
                      CMatrix::diagonal(std::vector<double>{0, 3, 1}), 1e-14);
  expect_entries_near(sqrt_psd(CMatrix::from_rows({{2, 5}, {5, 17}})),
                      CMatrix::from_rows({{1, 1}, {1, 4}}), 1e-13);
  expect_entries_near(power_psd(CMatrix::diagonal(std::vector<double>{4, 9}), 0.5),
                      CMatrix::diagonal(std::vector<double>{2, 3}), 1e-14);
  // 0^0 = 0.
  expect_entries_near(power_psd(CMatrix::diagonal(std::vector<double>{0, 4}), 0.0),
                      CMatrix::diagonal(std::vector<double>{0, 1}), 1e-15);
  EXPECT_THROW(power_psd(CMatrix::identity(2), 1.5), std::invalid_argument);
}

TEST(PsdCalculus, RejectsMateriallyNegative) {
  try {
    (void)sqrt_psd(CMatrix::diagonal(std::vector<double>{1, -0.5}));
    FAIL();
  } catch (const NotPsd& e) {
    EXPECT_NEAR(e.min_eigenvalue(), -0.5, 1e-15);
  }
  // Within the clamp: treated as zero.
  EXPECT_NO_THROW(sqrt_psd(CMatrix::diagonal(std::vector<double>{1, -1e-12})));
  EXPECT_FALSE(check_psd(CMatrix::diagonal(std::vector<double>{1, -0.5})).psd);
  EXPECT_TRUE(check_psd(CMatrix::identity(3)).psd);
}

TEST(PsdCalculus, PowersComposeOnRandomPsd) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const CMatrix p = random_matrix(seed, 6, Family::psd_pair);
    const CMatrix r = sqrt_psd(p);
    EXPECT_LE(rel_frob_error(r * r, p), 1e-8);
    for (double s : {0.1, 0.25, 0.5, 0.9}) {
      const CMatrix f = power_psd(p, s);
      const CMatrix g = power_psd(p, 1.0 - s);
      EXPECT_LE(rel_frob_error(f * g, p), 1e-8) << "s=" << s;
      EXPECT_EQ(hermitian_residual(f), 0.0);
      EXPECT_TRUE(check_psd(f).psd);
    }
  }
}

TEST(AbsParts, Examples) {
  const AbsParts r = abs_parts(CMatrix::from_rows({{1, 4}, {1, 1}}));
  expect_entries_near(r.abs_a, CMatrix::from_rows({{1, 1}, {1, 4}}), 1e-13);
  expect_entries_near(r.abs_a_star, CMatrix::from_rows({{4, 1}, {1, 1}}), 1e-13);

  const AbsParts u = abs_parts(random_matrix(3, 5, Family::unitary));
  expect_entries_near(u.abs_a, CMatrix::identity(5), 1e-12);
  expect_entries_near(u.abs_a_star, CMatrix::identity(5), 1e-12);

  const AbsParts nil = abs_parts(CMatrix::from_rows({{0, 2}, {0, 0}}));
  expect_entries_near(nil.abs_a, CMatrix::diagonal(std::vector<double>{0, 2}), 1e-14);
  expect_entries_near(nil.abs_a_star, CMatrix::diagonal(std::vector<double>{2, 0}), 1e-14);
}

TEST(Block2, NormDominatesBlockNorms) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const CMatrix a = random_matrix(seed, 3), x = random_matrix(seed + 1, 3);
    const CMatrix y = random_matrix(seed + 2, 3), b = random_matrix(seed + 3, 3);
    const double big = op_norm(block2(a, x, y, b));
    for (const CMatrix* m : {&a, &x, &y, &b}) EXPECT_GE(big + 1e-12, op_norm(*m));
  }
}

TEST(Block2, ProofFactorsReproduceMixedSum) {
  // T = [[A, B*], [0, 0]]: ||T||^2 = ||T T*|| = ||AA* + B*B||.
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const CMatrix a = random_matrix(seed, 4), b = random_matrix(seed + 7, 4);
    const CMatrix z = CMatrix::zeros(4);
    const double via_block = std::pow(op_norm(block2(a, adjoint(b), z, z)), 2);
    EXPECT_NEAR(via_block, op_norm(a * adjoint(a) + adjoint(b) * b), 1e-10 * via_block);
  }
}

}  // namespace
}  // namespace numrad
