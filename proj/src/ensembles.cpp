#include "numrad/ensembles.hpp"

#include <array>
#include <cmath>

#include "numrad/eig.hpp"
#include "numrad/functional.hpp"
#include "numrad/rng.hpp"

namespace numrad {

namespace {

struct FamilyName {
  Family family;
  const char* name;
};

constexpr std::array<FamilyName, 10> kFamilies{{
    {Family::ginibre, "ginibre"},
    {Family::hermitian_gauss, "hermitian_gauss"},
    {Family::normal, "normal"},
    {Family::unitary, "unitary"},
    {Family::nilpotent_rank1, "nilpotent_rank1"},
    {Family::alpha_oplus_B, "alpha_oplus_B"},
    {Family::intertwined_pair, "intertwined_pair"},
    {Family::nilpotent_pair, "nilpotent_pair"},
    {Family::jordan_shifted, "jordan_shifted"},
    {Family::psd_pair, "psd_pair"},
}};

CMatrix ginibre(Rng& rng, std::size_t n) {
  CMatrix g(n);
  for (cplx& z : g.data()) z = rng.complex_normal();
  return g;
}

std::vector<cplx> gaussian_vector(Rng& rng, std::size_t n) {
  std::vector<cplx> v(n);
  for (cplx& z : v) z = rng.complex_normal();
  return v;
}

// x <- x - <q, x> q for unit q.
void project_out(std::vector<cplx>& x, std::span<const cplx> q) {
  const cplx c = inner(q, x);
  for (std::size_t k = 0; k < x.size(); ++k) x[k] -= c * q[k];
}

void normalize(std::vector<cplx>& x) {
  const double nrm = vector_norm(x);
  for (cplx& z : x) z /= nrm;
}

// Haar unitary: Gram-Schmidt QR of a Ginibre matrix. Gram-Schmidt leaves a
// positive real diagonal in R, which is the phase normalization.
CMatrix haar_unitary(Rng& rng, std::size_t n) {
  const CMatrix g = ginibre(rng, n);
  std::vector<std::vector<cplx>> q;
  q.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<cplx> col(n);
    for (std::size_t i = 0; i < n; ++i) col[i] = g(i, j);
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& prev : q) project_out(col, prev);
    normalize(col);
    q.push_back(std::move(col));
  }
  CMatrix u(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) u(i, j) = q[j][i];
  return u;
}

// Orthonormal pair (u, v) from two Gaussian vectors.
std::pair<std::vector<cplx>, std::vector<cplx>> orthonormal_pair(Rng& rng, std::size_t n) {
  std::vector<cplx> u = gaussian_vector(rng, n);
  normalize(u);
  std::vector<cplx> v = gaussian_vector(rng, n);
  project_out(v, u);
  project_out(v, u);
  normalize(v);
  return {std::move(u), std::move(v)};
}

CMatrix outer(std::span<const cplx> x, std::span<const cplx> y, cplx scale = 1.0) {
  const std::size_t n = x.size();
  CMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = scale * x[i] * std::conj(y[j]);
  return m;
}

double param_or(const EnsembleSpec& spec, const std::string& key, double fallback) {
  const auto it = spec.params.find(key);
  return it == spec.params.end() ? fallback : it->second;
}

// A complex parameter given as key_re/key_im; if either part is set the
// other defaults to 0, otherwise the random draw is used.
cplx complex_param(const EnsembleSpec& spec, const std::string& key, cplx fallback) {
  const bool given = spec.params.count(key + "_re") != 0 || spec.params.count(key + "_im") != 0;
  if (!given) return fallback;
  return {param_or(spec, key + "_re", 0.0), param_or(spec, key + "_im", 0.0)};
}

CMatrix draw_nilpotent_rank1(Rng& rng, std::size_t n) {
  auto [u, v] = orthonormal_pair(rng, n);
  const double s = 0.25 + 1.75 * rng.uniform();
  return outer(u, v, s);
}

CMatrix draw_alpha_oplus(Rng& rng, const EnsembleSpec& spec) {
  const std::size_t n = spec.n;
  const cplx random_alpha = rng.complex_normal();
  const cplx alpha = complex_param(spec, "alpha", random_alpha);
  if (std::abs(alpha) == 0.0) throw InvalidEnsemble("alpha_oplus_B: alpha must be nonzero");
  CMatrix b = ginibre(rng, n - 1);
  const double target = std::abs(alpha) * rng.uniform();
  const double nb = op_norm(b);
  if (nb > 0.0) b = scale(b, target / nb);
  return alpha_oplus(alpha, b, haar_unitary(rng, n));
}

CMatrix draw_jordan_shifted(Rng& rng, const EnsembleSpec& spec) {
  const std::size_t n = spec.n;
  const cplx random_lambda = rng.complex_normal();
  const double random_mu = 0.25 + 1.75 * rng.uniform();
  const cplx lambda = complex_param(spec, "lambda", random_lambda);
  const double mu = param_or(spec, "mu", random_mu);
  CMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = lambda;
    if (i + 1 < n) m(i, i + 1) = mu;
  }
  return m;
}

// A Ginibre, B = p(|A| / ||A||) with a random real cubic p. B is a function
// of |A| through the same eigenbasis, so it commutes with |A| and is
// Hermitian: |A|B = B|A| = B*|A|.
std::pair<CMatrix, CMatrix> draw_intertwined(Rng& rng, std::size_t n) {
  CMatrix a = ginibre(rng, n);
  std::array<double, 4> coef{};
  for (double& c : coef) c = rng.normal();
  const HermEig eig = herm_eig(hermitian_part(adjoint(a) * a));
  std::vector<double> sigma(n);
  double smax = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    sigma[k] = std::sqrt(std::max(0.0, eig.values[k]));
    smax = std::max(smax, sigma[k]);
  }
  CMatrix b(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double t = smax > 0.0 ? sigma[k] / smax : 0.0;
    const double p = coef[0] + t * (coef[1] + t * (coef[2] + t * coef[3]));
    const std::vector<cplx> v = eig.vector(k);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) b(i, j) += p * v[i] * std::conj(v[j]);
  }
  return {std::move(a), hermitian_part(b)};
}

CMatrix draw_single(Rng& rng, const EnsembleSpec& spec) {
  const std::size_t n = spec.n;
  switch (spec.family) {
    case Family::ginibre: return ginibre(rng, n);
    case Family::hermitian_gauss: return hermitian_part(ginibre(rng, n));
    case Family::normal: {
      const CMatrix u = haar_unitary(rng, n);
      std::vector<cplx> d = gaussian_vector(rng, n);
      return u * CMatrix::diagonal(std::span<const cplx>(d)) * adjoint(u);
    }
    case Family::unitary: return haar_unitary(rng, n);
    case Family::nilpotent_rank1: return draw_nilpotent_rank1(rng, n);
    case Family::alpha_oplus_B: return draw_alpha_oplus(rng, spec);
    case Family::jordan_shifted: return draw_jordan_shifted(rng, spec);
    case Family::psd_pair: {
      const CMatrix g = ginibre(rng, n);
      return scale(hermitian_part(g * adjoint(g)), 1.0 / static_cast<double>(n));
    }
    case Family::intertwined_pair:
    case Family::nilpotent_pair: break;
  }
  throw InvalidEnsemble("family produces pairs only");
}

}  // namespace

const char* to_string(Family f) {
  for (const auto& e : kFamilies)
    if (e.family == f) return e.name;
  return "unknown";
}

std::optional<Family> parse_family(std::string_view s) {
  for (const auto& e : kFamilies)
    if (s == e.name) return e.family;
  return std::nullopt;
}

const std::vector<Family>& all_families() {
  static const std::vector<Family> list = [] {
    std::vector<Family> out;
    for (const auto& e : kFamilies) out.push_back(e.family);
    return out;
  }();
  return list;
}

bool is_pair_family(Family f) {
  return f == Family::intertwined_pair || f == Family::nilpotent_pair;
}

bool family_supports_arity(Family f, std::size_t arity) {
  return is_pair_family(f) ? arity == 2 : arity >= 1;
}

std::vector<CMatrix> draw(const EnsembleSpec& spec, std::uint64_t trial, std::size_t arity) {
  const bool structured = spec.family != Family::ginibre &&
                          spec.family != Family::hermitian_gauss &&
                          spec.family != Family::normal && spec.family != Family::unitary &&
                          spec.family != Family::psd_pair;
  if (spec.n < 1 || (structured && spec.n < 2))
    throw InvalidEnsemble(std::string(to_string(spec.family)) + ": invalid dimension " +
                          std::to_string(spec.n));
  if (!family_supports_arity(spec.family, arity))
    throw InvalidEnsemble(std::string(to_string(spec.family)) + ": cannot produce " +
                          std::to_string(arity) + " inputs");
  Rng rng(trial_seed(spec.seed, trial));
  std::vector<CMatrix> out;
  if (spec.family == Family::intertwined_pair) {
    auto [a, b] = draw_intertwined(rng, spec.n);
    out.push_back(std::move(a));
    out.push_back(std::move(b));
  } else if (spec.family == Family::nilpotent_pair) {
    auto [u, v] = orthonormal_pair(rng, spec.n);
    out.push_back(outer(u, v));
    out.push_back(outer(v, u));
  } else {
    for (std::size_t k = 0; k < arity; ++k) out.push_back(draw_single(rng, spec));
  }
  return out;
}

CMatrix alpha_oplus(cplx alpha, const CMatrix& b, const CMatrix& u) {
  const std::size_t n = b.n() + 1;
  if (u.n() != n) throw DimensionMismatch("alpha_oplus", u.n(), n);
  CMatrix d(n);
  d(0, 0) = alpha;
  for (std::size_t i = 0; i < b.n(); ++i)
    for (std::size_t j = 0; j < b.n(); ++j) d(i + 1, j + 1) = b(i, j);
  return u * d * adjoint(u);
}

std::pair<CMatrix, CMatrix> canonical_nilpotent_pair(std::size_t n) {
  if (n < 2) throw InvalidEnsemble("nilpotent_pair: dimension must be at least 2");
  CMatrix a(n);
  CMatrix b(n);
  a(0, 1) = 1.0;
  b(1, 0) = 1.0;
  return {std::move(a), std::move(b)};
}

CMatrix worked_example(std::string_view name) {
  if (name == "example2x2") return CMatrix::from_rows({{1, 4}, {1, 1}});
  if (name == "example3x3") return CMatrix::from_rows({{0, 3, 0}, {0, 0, 0}, {0, 0, 1}});
  throw std::invalid_argument("unknown example: " + std::string(name));
}

}  // namespace numrad
