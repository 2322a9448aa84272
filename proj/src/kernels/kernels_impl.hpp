#pragma once

#include "numrad/kernels.hpp"

namespace numrad::kernels {

#if defined(NUMRAD_HAVE_AVX2)
// Defined in kernels_avx2.cpp, which is the only translation unit built with
// -mavx2 -mfma. Callers must check CPU support before using it.
const KernelTable& avx2_table_unchecked();
#endif

}  // namespace numrad::kernels
