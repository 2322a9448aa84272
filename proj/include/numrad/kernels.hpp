#pragma once

// Inner-loop kernels for dense complex arithmetic. A scalar reference
// implementation always exists; an AVX2/FMA variant is compiled when the
// toolchain allows it and picked at runtime when the CPU supports it.
//
// Complex values are stored interleaved (re, im), matching std::complex.

#include <complex>
#include <cstddef>
#include <string_view>
#include <vector>

namespace numrad::kernels {

using cplx = std::complex<double>;

struct KernelTable {
  const char* name;

  // c = a * b for n x n row-major matrices. c must not alias a or b.
  void (*cgemm)(const cplx* a, const cplx* b, cplx* c, std::size_t n);

  // Two-row linear combination, in place:
  //   x' = alpha*x + beta*y,  y' = gamma*x + delta*y
  void (*rot2)(cplx* x, cplx* y, std::size_t len, cplx alpha, cplx beta, cplx gamma,
               cplx delta);

  // sum |x_k|^2
  double (*sumsq)(const cplx* x, std::size_t len);

  // out = cos_t * re - sin_t * im, elementwise over len entries.
  void (*rotate_parts)(const cplx* re, const cplx* im, double cos_t, double sin_t, cplx* out,
                       std::size_t len);
};

const KernelTable& scalar_table();

// nullptr when the AVX2 variant was not built or the CPU lacks AVX2/FMA.
const KernelTable* avx2_table();

// Table used by the library. Chosen once on first use: the NUMRAD_KERNEL
// environment variable (scalar|avx2|auto) wins, otherwise the best supported.
const KernelTable& active();

// Override the active table; returns false if the name is unknown or
// unsupported here. Intended for process start-up (CLI flag, tests).
bool select(std::string_view name);

std::vector<std::string_view> available();

}  // namespace numrad::kernels
