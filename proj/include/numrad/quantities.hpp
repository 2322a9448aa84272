#pragma once

#include <optional>
#include <vector>

#include "numrad/cmatrix.hpp"
#include "numrad/settings.hpp"

namespace numrad {

enum class QuantityKind { numerical_radius, crawford, spectral_radius, op_norm, alpha_bound };

const char* to_string(QuantityKind k);

struct QuantityResult {
  double value = 0.0;
  QuantityKind kind = QuantityKind::numerical_radius;
  std::optional<double> theta_star;
  std::optional<std::vector<cplx>> witness;
  std::optional<double> alpha_star;
  int iterations = 0;
};

struct SupportPoint {
  double lambda;
  std::vector<cplx> vector;
};

// Largest eigenpair of H(theta) = (e^{i theta} A + e^{-i theta} A*) / 2.
SupportPoint support_lambda_max(const CMatrix& a, double theta);

// w(A) = max over theta of lambda_max(H(theta)).
QuantityResult numerical_radius(const CMatrix& a, const Settings& s = default_settings());

// c(A) = max(0, -min over theta of lambda_max(H(theta))), the distance from
// 0 to the (convex) numerical range.
QuantityResult crawford(const CMatrix& a, const Settings& s = default_settings());

// Closed form for Hermitian H: 0 if the spectrum straddles 0, otherwise the
// smaller end modulus.
double crawford_hermitian(const CMatrix& h);

// r(PQ) for PSD P, Q, computed as lambda_max(P^{1/2} Q P^{1/2}). The second
// route ||P^{1/2} Q^{1/2}||^2 is evaluated as well.
struct PsdProductRadius {
  double value;
  double via_norm;
  double discrepancy;  // |value - via_norm| / max(1, value)
};
PsdProductRadius spectral_radius_psd_product_detail(const CMatrix& p, const CMatrix& q);
double spectral_radius_psd_product(const CMatrix& p, const CMatrix& q);

// Gelfand formula with repeated squaring, ||A^{2^m}||^{1/2^m}.
struct GelfandTrace {
  double value;
  int steps;
  std::vector<double> sequence;
};
GelfandTrace spectral_radius_gelfand(const CMatrix& a);
double spectral_radius_general(const CMatrix& a);

// max |lambda| for Hermitian input (exact route).
double spectral_radius_hermitian(const CMatrix& h);

// min over alpha in [0,1] of || alpha |A|^2 + (1 - alpha) |A*|^2 ||.
QuantityResult alpha_min_bound(const CMatrix& a, const Settings& s = default_settings());

}  // namespace numrad
