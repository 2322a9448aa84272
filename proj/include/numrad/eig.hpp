#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "numrad/cmatrix.hpp"

namespace numrad {

class NotHermitian : public std::domain_error {
 public:
  NotHermitian(const std::string& where, double residual);
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

// Eigen-decomposition H = V diag(values) V*, values ascending, V unitary.
struct HermEig {
  std::vector<double> values;
  CMatrix vectors;
  int sweeps = 0;

  std::vector<cplx> vector(std::size_t k) const;
};

// Relative Hermitian tolerance accepted before symmetrization.
inline constexpr double kHermitianTol = 1e-10;

// Throws NotHermitian when ||H - H*||_F > kHermitianTol * (1 + ||H||_F).
void require_hermitian(const CMatrix& h, const char* where);

// Cyclic complex Jacobi. The input is symmetrized first; sweeps run until the
// off-diagonal Frobenius mass is at most 1e-13 * ||H||_F.
HermEig herm_eig(const CMatrix& h);

// Eigenvalues only (ascending) via Householder tridiagonalization and
// implicit QL. Same input contract as herm_eig; roughly an order of
// magnitude cheaper for the small matrices used in angle scans.
std::vector<double> herm_eigvals(const CMatrix& h);

// As herm_eigvals but skips the Hermitian check; h must already be exactly
// Hermitian. Used on hot paths that build H from Hermitian parts.
std::vector<double> herm_eigvals_unchecked(const CMatrix& h);

struct SVDResult {
  std::vector<double> singular_values;  // descending, nonnegative
  CMatrix u;                            // A = U diag(s) V*
  CMatrix v;
};

// One-sided (Hestenes) Jacobi SVD.
SVDResult svd(const CMatrix& a);

}  // namespace numrad
