#include "numrad/quantities.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "numrad/eig.hpp"
#include "numrad/functional.hpp"
#include "numrad/kernels.hpp"

namespace numrad {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kInvPhi = 0.6180339887498948482;  // (sqrt(5) - 1) / 2

// H(theta) = cos(theta) Re(A) - sin(theta) Im(A), which equals
// (e^{i theta} A + e^{-i theta} A*) / 2.
class SupportFunction {
 public:
  explicit SupportFunction(const CMatrix& a) : parts_(cartesian_parts(a)), h_(a.n()) {}

  const CMatrix& hermitian_at(double theta) {
    const std::size_t len = h_.n() * h_.n();
    kernels::active().rotate_parts(parts_.re.data().data(), parts_.im.data().data(),
                                   std::cos(theta), std::sin(theta), h_.data().data(), len);
    return h_;
  }

  std::vector<double> eigenvalues_at(double theta) {
    ++evaluations_;
    return herm_eigvals_unchecked(hermitian_at(theta));
  }

  double lambda_max(double theta) { return eigenvalues_at(theta).back(); }

  int evaluations() const { return evaluations_; }

 private:
  CartesianParts parts_;
  CMatrix h_;
  int evaluations_ = 0;
};

// h(theta_k) on the grid theta_k = 2 pi k / G. For even G the upper half
// comes from H(theta + pi) = -H(theta), i.e. h(theta + pi) = -lambda_min(theta).
std::vector<double> scan_grid(SupportFunction& f, std::size_t grid) {
  if (grid < 4) throw std::invalid_argument("angle grid must have at least 4 points");
  std::vector<double> h(grid);
  const double step = kTwoPi / static_cast<double>(grid);
  if (grid % 2 == 0) {
    const std::size_t half = grid / 2;
    for (std::size_t k = 0; k < half; ++k) {
      const std::vector<double> lam = f.eigenvalues_at(step * static_cast<double>(k));
      h[k] = lam.back();
      h[k + half] = -lam.front();
    }
  } else {
    for (std::size_t k = 0; k < grid; ++k) h[k] = f.lambda_max(step * static_cast<double>(k));
  }
  return h;
}

struct Optimum {
  double theta;
  double value;
};

// Golden-section search for the maximum of sign * h on [lo, hi], seeded with
// the grid point (theta0, value0). Returns the best point evaluated.
Optimum refine(SupportFunction& f, double lo, double hi, double theta0, double value0, double sign,
               double tol) {
  Optimum best{theta0, value0};
  auto consider = [&](double t, double v) {
    if (sign * v > sign * best.value) best = {t, v};
  };
  double c = hi - kInvPhi * (hi - lo);
  double d = lo + kInvPhi * (hi - lo);
  double fc = f.lambda_max(c);
  double fd = f.lambda_max(d);
  consider(c, fc);
  consider(d, fd);
  while (hi - lo > tol) {
    if (sign * fc >= sign * fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - kInvPhi * (hi - lo);
      fc = f.lambda_max(c);
      consider(c, fc);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + kInvPhi * (hi - lo);
      fd = f.lambda_max(d);
      consider(d, fd);
    }
  }
  return best;
}

double wrap_angle(double t) {
  double r = std::fmod(t, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

// Index of the extreme grid value; ties go to the smallest angle.
std::size_t extreme_index(const std::vector<double>& h, double sign) {
  std::size_t best = 0;
  for (std::size_t k = 1; k < h.size(); ++k)
    if (sign * h[k] > sign * h[best]) best = k;
  return best;
}

Optimum optimize_support(SupportFunction& f, const Settings& s, double sign) {
  const std::vector<double> h = scan_grid(f, s.grid);
  const std::size_t k = extreme_index(h, sign);
  const double step = kTwoPi / static_cast<double>(s.grid);
  const double t0 = step * static_cast<double>(k);
  Optimum opt = refine(f, t0 - step, t0 + step, t0, h[k], sign, s.refine_tol);
  opt.theta = wrap_angle(opt.theta);
  return opt;
}

std::vector<cplx> top_eigenvector(SupportFunction& f, double theta) {
  const HermEig eig = herm_eig(f.hermitian_at(theta));
  return eig.vector(eig.values.size() - 1);
}

}  // namespace

const char* to_string(QuantityKind k) {
  switch (k) {
    case QuantityKind::numerical_radius: return "numerical_radius";
    case QuantityKind::crawford: return "crawford";
    case QuantityKind::spectral_radius: return "spectral_radius";
    case QuantityKind::op_norm: return "op_norm";
    case QuantityKind::alpha_bound: return "alpha_bound";
  }
  return "unknown";
}

SupportPoint support_lambda_max(const CMatrix& a, double theta) {
  SupportFunction f(a);
  const HermEig eig = herm_eig(f.hermitian_at(theta));
  const std::size_t top = eig.values.size() - 1;
  return {eig.values[top], eig.vector(top)};
}

QuantityResult numerical_radius(const CMatrix& a, const Settings& s) {
  SupportFunction f(a);
  const Optimum opt = optimize_support(f, s, +1.0);
  std::vector<cplx> x = top_eigenvector(f, opt.theta);
  // Both lambda_max(H(theta)) and |<Ax, x>| are lower bounds for w(A); keep the larger.
  const double attained = std::abs(inner(x, matvec(a, x)));
  QuantityResult r;
  r.kind = QuantityKind::numerical_radius;
  r.value = std::max({0.0, opt.value, attained});
  r.theta_star = opt.theta;
  r.witness = std::move(x);
  r.iterations = f.evaluations();
  return r;
}

QuantityResult crawford(const CMatrix& a, const Settings& s) {
  SupportFunction f(a);
  const Optimum opt = optimize_support(f, s, -1.0);
  QuantityResult r;
  r.kind = QuantityKind::crawford;
  r.value = std::max(0.0, -opt.value);
  r.theta_star = opt.theta;
  r.witness = top_eigenvector(f, opt.theta);
  r.iterations = f.evaluations();
  return r;
}

double crawford_hermitian(const CMatrix& h) {
  const std::vector<double> lam = herm_eigvals(h);
  const double lo = lam.front();
  const double hi = lam.back();
  if (lo <= 0.0 && 0.0 <= hi) return 0.0;
  return std::min(std::abs(lo), std::abs(hi));
}

PsdProductRadius spectral_radius_psd_product_detail(const CMatrix& p, const CMatrix& q) {
  if (p.n() != q.n()) throw DimensionMismatch("spectral_radius_psd_product", p.n(), q.n());
  const CMatrix sp = sqrt_psd(p);
  const CMatrix sq = sqrt_psd(q);
  const std::vector<double> lam = herm_eigvals_unchecked(hermitian_part(sp * q * sp));
  const double value = std::max(0.0, lam.back());
  const double nrm = op_norm(sp * sq);
  const double via_norm = nrm * nrm;
  return {value, via_norm, std::abs(value - via_norm) / std::max(1.0, value)};
}

double spectral_radius_psd_product(const CMatrix& p, const CMatrix& q) {
  return spectral_radius_psd_product_detail(p, q).value;
}

GelfandTrace spectral_radius_gelfand(const CMatrix& a) {
  constexpr int kMaxSteps = 60;
  constexpr double kStop = 1e-10;
  // Rounding slack on the monotonicity check.
  constexpr double kMonotoneSlack = 1e-12;

  GelfandTrace out{0.0, 0, {}};
  double nm = op_norm(a);
  if (nm == 0.0) return out;
  out.sequence.push_back(nm);
  // m-th iterate: A^{2^m} = m_scaled * exp(log_scale).
  CMatrix m_scaled = a;
  double log_scale = 0.0;
  double power = 1.0;
  double prev = nm;
  for (int step = 1; step <= kMaxSteps; ++step) {
    const CMatrix unit = scale(m_scaled, 1.0 / nm);
    log_scale = 2.0 * (log_scale + std::log(nm));
    m_scaled = unit * unit;
    power *= 2.0;
    nm = op_norm(m_scaled);
    out.steps = step;
    if (nm == 0.0) {
      out.sequence.push_back(0.0);
      out.value = 0.0;
      return out;
    }
    const double b = std::exp((std::log(nm) + log_scale) / power);
    if (b > prev * (1.0 + kMonotoneSlack))
      throw std::logic_error("Gelfand sequence increased; submultiplicativity violated");
    out.sequence.push_back(b);
    const bool done = std::abs(prev - b) <= kStop * prev;
    prev = b;
    if (done) break;
  }
  out.value = prev;
  return out;
}

double spectral_radius_general(const CMatrix& a) { return spectral_radius_gelfand(a).value; }

double spectral_radius_hermitian(const CMatrix& h) {
  const std::vector<double> lam = herm_eigvals(h);
  return std::max(std::abs(lam.front()), std::abs(lam.back()));
}

QuantityResult alpha_min_bound(const CMatrix& a, const Settings& s) {
  const CMatrix as = adjoint(a);
  const CMatrix p1 = hermitian_part(as * a);
  const CMatrix p2 = hermitian_part(a * as);
  const std::size_t n = a.n();
  CMatrix mix(n);
  int evals = 0;
  auto f = [&](double alpha) {
    ++evals;
    auto md = mix.data();
    auto d1 = p1.data();
    auto d2 = p2.data();
    for (std::size_t k = 0; k < md.size(); ++k) md[k] = alpha * d1[k] + (1.0 - alpha) * d2[k];
    return herm_eigvals_unchecked(mix).back();
  };

  // Convex in alpha: golden section is exact up to the bracket width.
  double lo = 0.0;
  double hi = 1.0;
  double c = hi - kInvPhi * (hi - lo);
  double d = lo + kInvPhi * (hi - lo);
  double best = std::numeric_limits<double>::infinity();
  double best_alpha = 1.0;
  auto consider = [&](double alpha, double v) {
    if (v < best || (v == best && alpha < best_alpha)) {
      best = v;
      best_alpha = alpha;
    }
  };
  double fc = f(c);
  double fd = f(d);
  consider(c, fc);
  consider(d, fd);
  while (hi - lo > s.alpha_tol) {
    if (fc <= fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - kInvPhi * (hi - lo);
      fc = f(c);
      consider(c, fc);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + kInvPhi * (hi - lo);
      fd = f(d);
      consider(d, fd);
    }
  }
  consider(0.0, f(0.0));
  consider(1.0, f(1.0));

  // Smallest alpha whose value ties the minimum. f is convex, hence
  // non-increasing on [0, best_alpha], so bisection finds the left end.
  const double thr = best + 1e-12 * std::max(1.0, std::abs(best));
  double alpha_star = best_alpha;
  if (best_alpha > 0.0) {
    if (f(0.0) <= thr) {
      alpha_star = 0.0;
    } else {
      double left = 0.0;
      double right = best_alpha;
      while (right - left > s.alpha_tol) {
        const double mid = 0.5 * (left + right);
        if (f(mid) <= thr)
          right = mid;
        else
          left = mid;
      }
      alpha_star = right;
    }
  }

  QuantityResult r;
  r.kind = QuantityKind::alpha_bound;
  // Report the value actually attained at alpha_star so it is a genuine
  // instance of the bound.
  r.value = std::max(0.0, f(alpha_star));
  r.alpha_star = alpha_star;
  r.iterations = evals;
  return r;
}

}  // namespace numrad
