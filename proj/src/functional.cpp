#include "numrad/functional.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "numrad/eig.hpp"

namespace numrad {

namespace {

std::string psd_message(const std::string& where, double lam) {
  std::ostringstream os;
  os << where << ": matrix is not PSD (min eigenvalue " << lam << ")";
  return os.str();
}

double spectral_scale(const std::vector<double>& values) {
  double s = 0.0;
  for (double v : values) s = std::max(s, std::abs(v));
  return s;
}

}  // namespace

double psd_zero_threshold(std::size_t n, double scale) {
  return std::max(64.0, 8.0 * static_cast<double>(n)) * std::numeric_limits<double>::epsilon() * scale;
}

NotPsd::NotPsd(const std::string& where, double min_eigenvalue)
    : std::domain_error(psd_message(where, min_eigenvalue)), min_eigenvalue_(min_eigenvalue) {}

double op_norm(const CMatrix& a) {
  const std::vector<double> lam = herm_eigvals_unchecked(hermitian_part(adjoint(a) * a));
  return std::sqrt(std::max(0.0, lam.back()));
}

PsdCheck check_psd(const CMatrix& p) {
  require_hermitian(p, "check_psd");
  const std::vector<double> lam = herm_eigvals(p);
  const double floor = -kPsdClamp * spectral_scale(lam);
  return {lam.front() >= floor, lam.front()};
}

CMatrix power_psd(const CMatrix& p, double s) {
  if (!(s >= 0.0 && s <= 1.0)) throw std::invalid_argument("power_psd: exponent must lie in [0, 1]");
  const HermEig eig = herm_eig(p);
  const double floor = -kPsdClamp * spectral_scale(eig.values);
  if (eig.values.front() < floor) throw NotPsd("power_psd", eig.values.front());

  const std::size_t n = p.n();
  const double zero = psd_zero_threshold(n, spectral_scale(eig.values));
  std::vector<double> f(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double lam = eig.values[k] <= zero ? 0.0 : eig.values[k];
    f[k] = lam == 0.0 ? 0.0 : (s == 0.5 ? std::sqrt(lam) : std::pow(lam, s));
  }
  CMatrix out(n);
  const CMatrix& v = eig.vectors;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      cplx acc{};
      for (std::size_t k = 0; k < n; ++k) acc += v(i, k) * f[k] * std::conj(v(j, k));
      out(i, j) = acc;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    out(i, i) = out(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) out(j, i) = std::conj(out(i, j));
  }
  return out;
}

CMatrix sqrt_psd(const CMatrix& p) { return power_psd(p, 0.5); }

AbsParts abs_parts(const CMatrix& a) {
  const CMatrix as = adjoint(a);
  return {sqrt_psd(hermitian_part(as * a)), sqrt_psd(hermitian_part(a * as))};
}

}  // namespace numrad
