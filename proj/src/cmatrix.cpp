#include "numrad/cmatrix.hpp"

#include <bit>
#include <cmath>
#include <sstream>

#include "numrad/kernels.hpp"

namespace numrad {

namespace {

std::string dim_message(const std::string& what, std::size_t lhs, std::size_t rhs) {
  std::ostringstream os;
  os << what << ": dimension mismatch (" << lhs << " vs " << rhs << ")";
  return os.str();
}

void require_same(const char* what, const CMatrix& a, const CMatrix& b) {
  if (a.n() != b.n()) throw DimensionMismatch(what, a.n(), b.n());
}

}  // namespace

DimensionMismatch::DimensionMismatch(const std::string& what, std::size_t lhs, std::size_t rhs)
    : std::invalid_argument(dim_message(what, lhs, rhs)), lhs_(lhs), rhs_(rhs) {}

CMatrix::CMatrix(std::size_t n) : n_(n), a_(n * n) {
  if (n == 0) throw std::invalid_argument("CMatrix: dimension must be positive");
}

CMatrix::CMatrix(std::size_t n, std::vector<cplx> entries) : n_(n), a_(std::move(entries)) {
  if (n == 0) throw std::invalid_argument("CMatrix: dimension must be positive");
  if (a_.size() != n * n) throw DimensionMismatch("CMatrix entries", a_.size(), n * n);
  require_finite(*this);
}

CMatrix CMatrix::identity(std::size_t n) {
  CMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::diagonal(std::span<const cplx> d) {
  CMatrix m(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  require_finite(m);
  return m;
}

CMatrix CMatrix::diagonal(std::span<const double> d) {
  CMatrix m(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  require_finite(m);
  return m;
}

CMatrix CMatrix::from_rows(std::initializer_list<std::initializer_list<cplx>> rows) {
  const std::size_t n = rows.size();
  std::vector<cplx> entries;
  entries.reserve(n * n);
  for (const auto& r : rows) {
    if (r.size() != n) throw DimensionMismatch("CMatrix::from_rows row length", r.size(), n);
    entries.insert(entries.end(), r.begin(), r.end());
  }
  return CMatrix(n, std::move(entries));
}

void require_finite(const CMatrix& a) {
  const std::size_t n = a.n();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const cplx z = a(i, j);
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        std::ostringstream os;
        os << "non-finite matrix entry at (" << i << ", " << j << ")";
        throw std::invalid_argument(os.str());
      }
    }
  }
}

CMatrix add(const CMatrix& a, const CMatrix& b) {
  require_same("add", a, b);
  CMatrix c(a.n());
  auto cd = c.data();
  auto ad = a.data();
  auto bd = b.data();
  for (std::size_t k = 0; k < cd.size(); ++k) cd[k] = ad[k] + bd[k];
  return c;
}

CMatrix sub(const CMatrix& a, const CMatrix& b) {
  require_same("sub", a, b);
  CMatrix c(a.n());
  auto cd = c.data();
  auto ad = a.data();
  auto bd = b.data();
  for (std::size_t k = 0; k < cd.size(); ++k) cd[k] = ad[k] - bd[k];
  return c;
}

CMatrix mul(const CMatrix& a, const CMatrix& b) {
  require_same("mul", a, b);
  CMatrix c(a.n());
  kernels::active().cgemm(a.data().data(), b.data().data(), c.data().data(), a.n());
  return c;
}

CMatrix scale(const CMatrix& a, cplx lambda) {
  CMatrix c(a.n());
  auto cd = c.data();
  auto ad = a.data();
  for (std::size_t k = 0; k < cd.size(); ++k) cd[k] = lambda * ad[k];
  return c;
}

CMatrix adjoint(const CMatrix& a) {
  const std::size_t n = a.n();
  CMatrix t(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) t(j, i) = std::conj(a(i, j));
  return t;
}

CMatrix hermitian_part(const CMatrix& h) {
  const std::size_t n = h.n();
  CMatrix s(n);
  for (std::size_t i = 0; i < n; ++i) {
    s(i, i) = h(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      const cplx v = 0.5 * (h(i, j) + std::conj(h(j, i)));
      s(i, j) = v;
      s(j, i) = std::conj(v);
    }
  }
  return s;
}

CartesianParts cartesian_parts(const CMatrix& a) {
  const std::size_t n = a.n();
  CMatrix re(n);
  CMatrix im(n);
  for (std::size_t i = 0; i < n; ++i) {
    re(i, i) = a(i, i).real();
    im(i, i) = a(i, i).imag();
    for (std::size_t j = i + 1; j < n; ++j) {
      const cplx aij = a(i, j);
      const cplx aji_c = std::conj(a(j, i));
      const cplx r = 0.5 * (aij + aji_c);
      // (a_ij - conj(a_ji)) / (2i)
      const cplx d = 0.5 * (aij - aji_c);
      const cplx s{d.imag(), -d.real()};
      re(i, j) = r;
      re(j, i) = std::conj(r);
      im(i, j) = s;
      im(j, i) = std::conj(s);
    }
  }
  return {std::move(re), std::move(im)};
}

CMatrix block2(const CMatrix& a, const CMatrix& x, const CMatrix& y, const CMatrix& b) {
  const std::size_t n = a.n();
  require_same("block2", a, x);
  require_same("block2", a, y);
  require_same("block2", a, b);
  CMatrix m(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      m(i, j) = a(i, j);
      m(i, j + n) = x(i, j);
      m(i + n, j) = y(i, j);
      m(i + n, j + n) = b(i, j);
    }
  }
  return m;
}

double frobenius_norm(const CMatrix& a) {
  return std::sqrt(kernels::active().sumsq(a.data().data(), a.data().size()));
}

double max_abs_entry(const CMatrix& a) {
  double m = 0.0;
  for (const cplx& z : a.data()) m = std::max(m, std::abs(z));
  return m;
}

double hermitian_residual(const CMatrix& h) {
  const std::size_t n = h.n();
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) s += std::norm(h(i, j) - std::conj(h(j, i)));
  return std::sqrt(s);
}

cplx trace(const CMatrix& a) {
  cplx t{};
  for (std::size_t i = 0; i < a.n(); ++i) t += a(i, i);
  return t;
}

cplx inner(std::span<const cplx> x, std::span<const cplx> y) {
  if (x.size() != y.size()) throw DimensionMismatch("inner", x.size(), y.size());
  cplx s{};
  for (std::size_t k = 0; k < x.size(); ++k) s += std::conj(x[k]) * y[k];
  return s;
}

std::vector<cplx> matvec(const CMatrix& a, std::span<const cplx> x) {
  if (x.size() != a.n()) throw DimensionMismatch("apply", a.n(), x.size());
  std::vector<cplx> y(a.n());
  for (std::size_t i = 0; i < a.n(); ++i) {
    cplx s{};
    for (std::size_t j = 0; j < a.n(); ++j) s += a(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

double vector_norm(std::span<const cplx> x) {
  return std::sqrt(kernels::active().sumsq(x.data(), x.size()));
}

namespace {

constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;

void fnv_u64(std::uint64_t& h, std::uint64_t v) {
  for (int b = 0; b < 8; ++b) {
    h ^= (v >> (8 * b)) & 0xffU;
    h *= kFnvPrime;
  }
}

void fnv_double(std::uint64_t& h, double x) {
  if (x == 0.0) x = 0.0;
  fnv_u64(h, std::bit_cast<std::uint64_t>(x));
}

}  // namespace

std::uint64_t canonical_digest(std::span<const CMatrix> inputs) {
  std::uint64_t h = kFnvOffset;
  for (const CMatrix& m : inputs) {
    fnv_u64(h, static_cast<std::uint64_t>(m.n()));
    for (const cplx& z : m.data()) {
      fnv_double(h, z.real());
      fnv_double(h, z.imag());
    }
  }
  return h;
}

std::string digest_hex(std::uint64_t digest) {
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = kHex[digest & 0xfU];
    digest >>= 4;
  }
  return out;
}

}  // namespace numrad
