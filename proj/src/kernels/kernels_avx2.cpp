// Built with -mavx2 -mfma. Two complex doubles per 256-bit register.
#include "kernels_impl.hpp"

#include <immintrin.h>

namespace numrad::kernels {
namespace {

// a * b for a broadcast scalar a = (ar, ai) and two packed complex values b.
inline __m256d cmul_bcast(__m256d ar, __m256d ai, __m256d b) {
  const __m256d bswap = _mm256_permute_pd(b, 0b0101);
  return _mm256_fmaddsub_pd(ar, b, _mm256_mul_pd(ai, bswap));
}

inline cplx cmul(cplx p, cplx q) {
  return {p.real() * q.real() - p.imag() * q.imag(), p.real() * q.imag() + p.imag() * q.real()};
}

void cgemm_avx2(const cplx* a, const cplx* b, cplx* c, std::size_t n) {
  auto* cd = reinterpret_cast<double*>(c);
  const auto* bd = reinterpret_cast<const double*>(b);
  const std::size_t pairs = n / 2;
  for (std::size_t i = 0; i < n * n; ++i) c[i] = cplx{};
  for (std::size_t i = 0; i < n; ++i) {
    double* ci = cd + 2 * i * n;
    for (std::size_t k = 0; k < n; ++k) {
      const cplx aik = a[i * n + k];
      if (aik == cplx{}) continue;
      const __m256d ar = _mm256_set1_pd(aik.real());
      const __m256d ai = _mm256_set1_pd(aik.imag());
      const double* bk = bd + 2 * k * n;
      for (std::size_t p = 0; p < pairs; ++p) {
        const __m256d bv = _mm256_loadu_pd(bk + 4 * p);
        const __m256d cv = _mm256_loadu_pd(ci + 4 * p);
        _mm256_storeu_pd(ci + 4 * p, _mm256_add_pd(cv, cmul_bcast(ar, ai, bv)));
      }
      if (n % 2 != 0) {
        const std::size_t j = n - 1;
        c[i * n + j] += cmul(aik, b[k * n + j]);
      }
    }
  }
}

void rot2_avx2(cplx* x, cplx* y, std::size_t len, cplx alpha, cplx beta, cplx gamma,
               cplx delta) {
  auto* xd = reinterpret_cast<double*>(x);
  auto* yd = reinterpret_cast<double*>(y);
  const __m256d alr = _mm256_set1_pd(alpha.real()), ali = _mm256_set1_pd(alpha.imag());
  const __m256d ber = _mm256_set1_pd(beta.real()), bei = _mm256_set1_pd(beta.imag());
  const __m256d gar = _mm256_set1_pd(gamma.real()), gai = _mm256_set1_pd(gamma.imag());
  const __m256d der = _mm256_set1_pd(delta.real()), dei = _mm256_set1_pd(delta.imag());
  const std::size_t pairs = len / 2;
  for (std::size_t p = 0; p < pairs; ++p) {
    const __m256d xv = _mm256_loadu_pd(xd + 4 * p);
    const __m256d yv = _mm256_loadu_pd(yd + 4 * p);
    const __m256d xn = _mm256_add_pd(cmul_bcast(alr, ali, xv), cmul_bcast(ber, bei, yv));
    const __m256d yn = _mm256_add_pd(cmul_bcast(gar, gai, xv), cmul_bcast(der, dei, yv));
    _mm256_storeu_pd(xd + 4 * p, xn);
    _mm256_storeu_pd(yd + 4 * p, yn);
  }
  if (len % 2 != 0) {
    const std::size_t k = len - 1;
    const cplx xk = x[k];
    const cplx yk = y[k];
    x[k] = cmul(alpha, xk) + cmul(beta, yk);
    y[k] = cmul(gamma, xk) + cmul(delta, yk);
  }
}

double sumsq_avx2(const cplx* x, std::size_t len) {
  const auto* xd = reinterpret_cast<const double*>(x);
  const std::size_t doubles = 2 * len;
  __m256d acc = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 4 <= doubles; k += 4) {
    const __m256d v = _mm256_loadu_pd(xd + k);
    acc = _mm256_fmadd_pd(v, v, acc);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double s = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (; k < doubles; ++k) s += xd[k] * xd[k];
  return s;
}

void rotate_parts_avx2(const cplx* re, const cplx* im, double cos_t, double sin_t, cplx* out,
                       std::size_t len) {
  const auto* rd = reinterpret_cast<const double*>(re);
  const auto* id = reinterpret_cast<const double*>(im);
  auto* od = reinterpret_cast<double*>(out);
  const __m256d c = _mm256_set1_pd(cos_t);
  const __m256d ms = _mm256_set1_pd(-sin_t);
  const std::size_t doubles = 2 * len;
  std::size_t k = 0;
  for (; k + 4 <= doubles; k += 4) {
    const __m256d r = _mm256_loadu_pd(rd + k);
    const __m256d i = _mm256_loadu_pd(id + k);
    _mm256_storeu_pd(od + k, _mm256_fmadd_pd(ms, i, _mm256_mul_pd(c, r)));
  }
  for (; k < doubles; ++k) od[k] = cos_t * rd[k] - sin_t * id[k];
}

constexpr KernelTable kAvx2{"avx2", cgemm_avx2, rot2_avx2, sumsq_avx2, rotate_parts_avx2};

}  // namespace

const KernelTable& avx2_table_unchecked() { return kAvx2; }

}  // namespace numrad::kernels
