#include "kernels_impl.hpp"

namespace numrad::kernels {
namespace {

void cgemm_scalar(const cplx* a, const cplx* b, cplx* c, std::size_t n) {
  for (std::size_t i = 0; i < n * n; ++i) c[i] = cplx{};
  for (std::size_t i = 0; i < n; ++i) {
    cplx* ci = c + i * n;
    for (std::size_t k = 0; k < n; ++k) {
      const cplx aik = a[i * n + k];
      if (aik == cplx{}) continue;
      const cplx* bk = b + k * n;
      for (std::size_t j = 0; j < n; ++j) {
        // Written out to avoid the NaN/Inf recovery path of operator*.
        const double re = aik.real() * bk[j].real() - aik.imag() * bk[j].imag();
        const double im = aik.real() * bk[j].imag() + aik.imag() * bk[j].real();
        ci[j] += cplx{re, im};
      }
    }
  }
}

inline cplx cmul(cplx p, cplx q) {
  return {p.real() * q.real() - p.imag() * q.imag(), p.real() * q.imag() + p.imag() * q.real()};
}

void rot2_scalar(cplx* x, cplx* y, std::size_t len, cplx alpha, cplx beta, cplx gamma,
                 cplx delta) {
  for (std::size_t k = 0; k < len; ++k) {
    const cplx xk = x[k];
    const cplx yk = y[k];
    x[k] = cmul(alpha, xk) + cmul(beta, yk);
    y[k] = cmul(gamma, xk) + cmul(delta, yk);
  }
}

double sumsq_scalar(const cplx* x, std::size_t len) {
  double s = 0.0;
  for (std::size_t k = 0; k < len; ++k) s += x[k].real() * x[k].real() + x[k].imag() * x[k].imag();
  return s;
}

void rotate_parts_scalar(const cplx* re, const cplx* im, double cos_t, double sin_t, cplx* out,
                         std::size_t len) {
  for (std::size_t k = 0; k < len; ++k) {
    out[k] = {cos_t * re[k].real() - sin_t * im[k].real(),
              cos_t * re[k].imag() - sin_t * im[k].imag()};
  }
}

constexpr KernelTable kScalar{"scalar", cgemm_scalar, rot2_scalar, sumsq_scalar,
                              rotate_parts_scalar};

}  // namespace

const KernelTable& scalar_table() { return kScalar; }

}  // namespace numrad::kernels
