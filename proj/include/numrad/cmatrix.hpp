#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace numrad {

using cplx = std::complex<double>;

class DimensionMismatch : public std::invalid_argument {
 public:
  DimensionMismatch(const std::string& what, std::size_t lhs, std::size_t rhs);
  std::size_t lhs() const noexcept { return lhs_; }
  std::size_t rhs() const noexcept { return rhs_; }

 private:
  std::size_t lhs_;
  std::size_t rhs_;
};

// Dense square complex matrix, row-major. Entries are always finite.
class CMatrix {
 public:
  explicit CMatrix(std::size_t n);
  CMatrix(std::size_t n, std::vector<cplx> entries);

  static CMatrix identity(std::size_t n);
  static CMatrix zeros(std::size_t n) { return CMatrix(n); }
  static CMatrix diagonal(std::span<const cplx> d);
  static CMatrix diagonal(std::span<const double> d);
  static CMatrix from_rows(std::initializer_list<std::initializer_list<cplx>> rows);

  std::size_t n() const noexcept { return n_; }

  cplx& operator()(std::size_t i, std::size_t j) noexcept { return a_[i * n_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const noexcept { return a_[i * n_ + j]; }

  std::span<cplx> row(std::size_t i) noexcept { return {a_.data() + i * n_, n_}; }
  std::span<const cplx> row(std::size_t i) const noexcept { return {a_.data() + i * n_, n_}; }

  std::span<cplx> data() noexcept { return a_; }
  std::span<const cplx> data() const noexcept { return a_; }

  bool operator==(const CMatrix& other) const = default;

 private:
  std::size_t n_;
  std::vector<cplx> a_;
};

// Throws std::invalid_argument naming the first offending entry.
void require_finite(const CMatrix& a);

CMatrix add(const CMatrix& a, const CMatrix& b);
CMatrix sub(const CMatrix& a, const CMatrix& b);
CMatrix mul(const CMatrix& a, const CMatrix& b);
CMatrix scale(const CMatrix& a, cplx lambda);

inline CMatrix operator+(const CMatrix& a, const CMatrix& b) { return add(a, b); }
inline CMatrix operator-(const CMatrix& a, const CMatrix& b) { return sub(a, b); }
inline CMatrix operator*(const CMatrix& a, const CMatrix& b) { return mul(a, b); }
inline CMatrix operator*(cplx lambda, const CMatrix& a) { return scale(a, lambda); }
inline CMatrix operator*(double lambda, const CMatrix& a) { return scale(a, lambda); }

CMatrix adjoint(const CMatrix& a);

struct CartesianParts {
  CMatrix re;
  CMatrix im;
};

// A = re + i*im with re = (A+A*)/2, im = (A-A*)/(2i), both exactly Hermitian.
CartesianParts cartesian_parts(const CMatrix& a);

// (H + H*)/2
CMatrix hermitian_part(const CMatrix& h);

// [[a, x], [y, b]] with every block n x n.
CMatrix block2(const CMatrix& a, const CMatrix& x, const CMatrix& y, const CMatrix& b);

double frobenius_norm(const CMatrix& a);
double max_abs_entry(const CMatrix& a);
// ||H - H*||_F
double hermitian_residual(const CMatrix& h);
cplx trace(const CMatrix& a);

// x^H y
cplx inner(std::span<const cplx> x, std::span<const cplx> y);
std::vector<cplx> matvec(const CMatrix& a, std::span<const cplx> x);
double vector_norm(std::span<const cplx> x);

// FNV-1a 64 over the canonical bytes of each matrix in order: n as a
// little-endian uint64, then (re, im) of every entry in row-major order as
// little-endian IEEE-754 binary64, with -0.0 mapped to +0.0.
std::uint64_t canonical_digest(std::span<const CMatrix> inputs);
std::string digest_hex(std::uint64_t digest);

}  // namespace numrad
