#pragma once

#include <stdexcept>
#include <string>

#include "numrad/cmatrix.hpp"

namespace numrad {

class NotPsd : public std::domain_error {
 public:
  NotPsd(const std::string& where, double min_eigenvalue);
  double min_eigenvalue() const noexcept { return min_eigenvalue_; }

 private:
  double min_eigenvalue_;
};

// Eigenvalues below -kPsdClamp * ||P|| are rejected; anything above that is
// clamped to zero before taking powers.
inline constexpr double kPsdClamp = 1e-10;

// Eigenvalues with |lambda| <= max(64, 8n) * eps * ||P|| are rounding noise
// and are treated as exact zeros; their square roots would otherwise leak
// O(sqrt(eps)) mass into rank-deficient |A|.
double psd_zero_threshold(std::size_t n, double scale);

// Largest singular value, sqrt(lambda_max(A*A)).
double op_norm(const CMatrix& a);

// P^s for Hermitian PSD P and s in [0, 1] (0^0 is taken as 0).
CMatrix power_psd(const CMatrix& p, double s);
CMatrix sqrt_psd(const CMatrix& p);

struct AbsParts {
  CMatrix abs_a;       // (A*A)^{1/2}
  CMatrix abs_a_star;  // (AA*)^{1/2}
};
AbsParts abs_parts(const CMatrix& a);

// Eigenvalue check used for PSD preconditions; returns the smallest
// eigenvalue and whether it clears the clamp threshold.
struct PsdCheck {
  bool psd;
  double min_eigenvalue;
};
PsdCheck check_psd(const CMatrix& p);

}  // namespace numrad
