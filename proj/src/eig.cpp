#include "numrad/eig.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "numrad/kernels.hpp"

namespace numrad {

namespace {

constexpr double kOffDiagTarget = 1e-13;
constexpr int kMaxJacobiSweeps = 100;
constexpr int kMaxQlIterations = 60;

std::string residual_message(const std::string& where, double residual) {
  std::ostringstream os;
  os << where << ": input is not Hermitian (residual ||H - H*||_F = " << residual << ")";
  return os.str();
}

double off_diagonal_mass(const CMatrix& a) {
  const std::size_t n = a.n();
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

// Parameters of the unitary J acting on coordinates (p, q) that diagonalizes
// the Hermitian 2x2 block [[a, b], [conj(b), d]]:
//   J = [[c, s], [-s*conj(e), c*conj(e)]],  e = b / |b|.
// After J* H J the block becomes diag(a - t|b|, d + t|b|).
struct Rotation {
  double c;
  double s;
  double t;
  cplx phase;
};

Rotation jacobi_rotation(double a, double d, cplx b) {
  const double mag = std::abs(b);
  const double theta = (d - a) / (2.0 * mag);
  double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  if (theta < 0.0) t = -t;
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  return {c, t * c, t, b / mag};
}

// Eigenvalues of the symmetric tridiagonal matrix (diag, sub) by implicit QL.
// sub has length n with sub[n-1] unused. Values are left unsorted in diag.
// sqrt(a^2 + b^2); std::hypot only when the plain form over/underflows.
double pythag(double a, double b) {
  const double s = a * a + b * b;
  if (s < std::numeric_limits<double>::max() && s > std::numeric_limits<double>::min())
    return std::sqrt(s);
  return std::hypot(a, b);
}

void tridiagonal_ql(std::vector<double>& diag, std::vector<double>& sub) {
  const int n = static_cast<int>(diag.size());
  const double eps = std::numeric_limits<double>::epsilon();
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m = l;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(diag[m]) + std::abs(diag[m + 1]);
        if (std::abs(sub[m]) <= eps * dd) break;
      }
      if (m != l) {
        if (iter++ == kMaxQlIterations) throw std::runtime_error("tridiagonal QL did not converge");
        double g = (diag[l + 1] - diag[l]) / (2.0 * sub[l]);
        double r = pythag(g, 1.0);
        g = diag[m] - diag[l] + sub[l] / (g + std::copysign(r, g));
        double s = 1.0;
        double c = 1.0;
        double p = 0.0;
        int i = m - 1;
        for (; i >= l; --i) {
          const double f = s * sub[i];
          const double b = c * sub[i];
          r = pythag(f, g);
          sub[i + 1] = r;
          if (r == 0.0) {
            diag[i + 1] -= p;
            sub[m] = 0.0;
            break;
          }
          s = f / r;
          c = g / r;
          g = diag[i + 1] - p;
          r = (diag[i] - g) * s + 2.0 * c * b;
          p = s * r;
          diag[i + 1] = g + p;
          g = c * r - b;
        }
        if (r == 0.0 && i >= l) continue;
        diag[l] -= p;
        sub[l] = g;
        sub[m] = 0.0;
      }
    } while (m != l);
  }
}

}  // namespace

NotHermitian::NotHermitian(const std::string& where, double residual)
    : std::domain_error(residual_message(where, residual)), residual_(residual) {}

std::vector<cplx> HermEig::vector(std::size_t k) const {
  const std::size_t n = vectors.n();
  std::vector<cplx> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = vectors(i, k);
  return v;
}

void require_hermitian(const CMatrix& h, const char* where) {
  const double res = hermitian_residual(h);
  if (res > kHermitianTol * (1.0 + frobenius_norm(h))) throw NotHermitian(where, res);
}

HermEig herm_eig(const CMatrix& h) {
  require_hermitian(h, "herm_eig");
  const std::size_t n = h.n();
  CMatrix a = hermitian_part(h);
  // Rows of w are the eigenvectors (w = V^T), so rotations touch contiguous memory.
  CMatrix w = CMatrix::identity(n);
  const auto& k = kernels::active();

  const double target = kOffDiagTarget * frobenius_norm(a);
  int sweep = 0;
  for (; sweep < kMaxJacobiSweeps; ++sweep) {
    if (off_diagonal_mass(a) <= target) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx b = a(p, q);
        const double mag = std::abs(b);
        if (mag == 0.0) continue;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        // Negligible against both diagonal entries: drop it.
        if (sweep > 3 && std::abs(app) + 100.0 * mag == std::abs(app) &&
            std::abs(aqq) + 100.0 * mag == std::abs(aqq)) {
          a(p, q) = 0.0;
          a(q, p) = 0.0;
          continue;
        }
        const Rotation r = jacobi_rotation(app, aqq, b);
        const cplx e = r.phase;
        k.rot2(a.row(p).data(), a.row(q).data(), n, r.c, -r.s * e, r.s, r.c * e);
        for (std::size_t i = 0; i < n; ++i) {
          if (i == p || i == q) continue;
          a(i, p) = std::conj(a(p, i));
          a(i, q) = std::conj(a(q, i));
        }
        a(p, p) = app - r.t * mag;
        a(q, q) = aqq + r.t * mag;
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        const cplx ec = std::conj(e);
        k.rot2(w.row(p).data(), w.row(q).data(), n, r.c, -r.s * ec, r.s, r.c * ec);
      }
    }
  }
  if (sweep == kMaxJacobiSweeps && off_diagonal_mass(a) > target)
    throw std::runtime_error("herm_eig: Jacobi iteration did not converge");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return a(x, x).real() < a(y, y).real();
  });

  HermEig out{std::vector<double>(n), CMatrix(n), sweep};
  for (std::size_t c = 0; c < n; ++c) {
    out.values[c] = a(order[c], order[c]).real();
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, c) = w(order[c], i);
  }
  return out;
}

std::vector<double> herm_eigvals(const CMatrix& h) {
  require_hermitian(h, "herm_eigvals");
  return herm_eigvals_unchecked(hermitian_part(h));
}

std::vector<double> herm_eigvals_unchecked(const CMatrix& h) {
  const std::size_t n = h.n();
  if (n == 1) return {h(0, 0).real()};
  if (n == 2) {
    const double a = h(0, 0).real();
    const double d = h(1, 1).real();
    const double mid = 0.5 * (a + d);
    const double rad = std::hypot(0.5 * (a - d), std::abs(h(0, 1)));
    return {mid - rad, mid + rad};
  }

  CMatrix a = h;
  std::vector<cplx> v(n);
  std::vector<cplx> w(n);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    const std::size_t m = n - k - 1;
    double xnorm2 = 0.0;
    for (std::size_t i = 0; i < m; ++i) xnorm2 += std::norm(a(k + 1 + i, k));
    const double tail = xnorm2 - std::norm(a(k + 1, k));
    if (tail == 0.0) continue;
    const double xnorm = std::sqrt(xnorm2);
    const cplx x0 = a(k + 1, k);
    const double ax0 = std::abs(x0);
    const cplx ph = ax0 == 0.0 ? cplx{1.0} : x0 / ax0;
    const cplx alpha = -ph * xnorm;
    for (std::size_t i = 0; i < m; ++i) v[i] = a(k + 1 + i, k);
    v[0] -= alpha;
    double vnorm2 = 0.0;
    for (std::size_t i = 0; i < m; ++i) vnorm2 += std::norm(v[i]);
    const double tau = 2.0 / vnorm2;

    // w = tau * S v over the trailing block S.
    cplx vw{};
    for (std::size_t i = 0; i < m; ++i) {
      cplx s{};
      const auto row = a.row(k + 1 + i);
      for (std::size_t j = 0; j < m; ++j) s += row[k + 1 + j] * v[j];
      w[i] = tau * s;
      vw += std::conj(v[i]) * w[i];
    }
    const double kk = 0.5 * tau * vw.real();
    for (std::size_t i = 0; i < m; ++i) w[i] -= kk * v[i];
    // Hermitian rank-2 update on the lower triangle, mirrored.
    for (std::size_t i = 0; i < m; ++i) {
      auto row = a.row(k + 1 + i);
      for (std::size_t j = 0; j <= i; ++j)
        row[k + 1 + j] -= v[i] * std::conj(w[j]) + w[i] * std::conj(v[j]);
      row[k + 1 + i].imag(0.0);
      for (std::size_t j = 0; j < i; ++j) a(k + 1 + j, k + 1 + i) = std::conj(row[k + 1 + j]);
    }
    a(k + 1, k) = alpha;
    a(k, k + 1) = std::conj(alpha);
    for (std::size_t i = 1; i < m; ++i) {
      a(k + 1 + i, k) = 0.0;
      a(k, k + 1 + i) = 0.0;
    }
  }

  std::vector<double> diag(n);
  std::vector<double> sub(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) diag[i] = a(i, i).real();
  for (std::size_t i = 0; i + 1 < n; ++i) sub[i] = std::abs(a(i + 1, i));
  tridiagonal_ql(diag, sub);
  std::sort(diag.begin(), diag.end());
  return diag;
}

SVDResult svd(const CMatrix& a) {
  const std::size_t n = a.n();
  const auto& k = kernels::active();
  // Row j of cols holds column j of A; row j of vt holds column j of V.
  CMatrix cols(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) cols(j, i) = a(i, j);
  CMatrix vt = CMatrix::identity(n);

  constexpr double kTol = 1e-15;
  constexpr int kMaxSweeps = 80;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double alpha = k.sumsq(cols.row(p).data(), n);
        const double beta = k.sumsq(cols.row(q).data(), n);
        const cplx gamma = inner(cols.row(p), cols.row(q));
        const double mag = std::abs(gamma);
        if (mag == 0.0 || mag <= kTol * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const Rotation r = jacobi_rotation(alpha, beta, gamma);
        const cplx ec = std::conj(r.phase);
        k.rot2(cols.row(p).data(), cols.row(q).data(), n, r.c, -r.s * ec, r.s, r.c * ec);
        k.rot2(vt.row(p).data(), vt.row(q).data(), n, r.c, -r.s * ec, r.s, r.c * ec);
      }
    }
    if (!rotated) break;
  }

  std::vector<double> sigma(n);
  for (std::size_t j = 0; j < n; ++j) sigma[j] = vector_norm(cols.row(j));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return sigma[x] > sigma[y]; });

  SVDResult out{std::vector<double>(n), CMatrix(n), CMatrix(n)};
  const double cutoff =
      static_cast<double>(n) * std::numeric_limits<double>::epsilon() * sigma[order[0]];
  std::vector<bool> filled(n, false);
  for (std::size_t c = 0; c < n; ++c) {
    const std::size_t j = order[c];
    out.singular_values[c] = sigma[j];
    for (std::size_t i = 0; i < n; ++i) out.v(i, c) = vt(j, i);
    if (sigma[j] > cutoff && sigma[j] > 0.0) {
      for (std::size_t i = 0; i < n; ++i) out.u(i, c) = cols(j, i) / sigma[j];
      filled[c] = true;
    }
  }
  // Complete U on the numerically-null columns: Gram-Schmidt of the standard
  // basis vector with the largest residual against the filled columns.
  for (std::size_t c = 0; c < n; ++c) {
    if (filled[c]) continue;
    std::vector<cplx> best;
    double best_norm = -1.0;
    for (std::size_t e = 0; e < n; ++e) {
      std::vector<cplx> cand(n, cplx{});
      cand[e] = 1.0;
      for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t o = 0; o < n; ++o) {
          if (!filled[o]) continue;
          cplx proj{};
          for (std::size_t i = 0; i < n; ++i) proj += std::conj(out.u(i, o)) * cand[i];
          for (std::size_t i = 0; i < n; ++i) cand[i] -= proj * out.u(i, o);
        }
      }
      const double nrm = vector_norm(cand);
      if (nrm > best_norm) {
        best_norm = nrm;
        best = std::move(cand);
      }
    }
    for (std::size_t i = 0; i < n; ++i) out.u(i, c) = best[i] / best_norm;
    filled[c] = true;
  }
  return out;
}

}  // namespace numrad
