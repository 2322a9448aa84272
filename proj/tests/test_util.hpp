#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <ostream>
#include <vector>

#include "numrad/cmatrix.hpp"
#include "numrad/ensembles.hpp"
#include "numrad/rng.hpp"

namespace numrad {

// Readable parameter values in test names and failure messages.
inline void PrintTo(Family f, std::ostream* os) { *os << to_string(f); }

}  // namespace numrad

namespace numrad::testing {

inline CMatrix random_matrix(std::uint64_t seed, std::size_t n, Family f = Family::ginibre) {
  EnsembleSpec s;
  s.family = f;
  s.n = n;
  s.seed = seed;
  return draw(s, 0, 1)[0];
}

inline std::vector<cplx> random_unit_vector(Rng& rng, std::size_t n) {
  std::vector<cplx> x(n);
  for (cplx& z : x) z = rng.complex_normal();
  const double nrm = vector_norm(x);
  for (cplx& z : x) z /= nrm;
  return x;
}

inline double rel_frob_error(const CMatrix& a, const CMatrix& b) {
  return frobenius_norm(a - b) / std::max(1.0, frobenius_norm(b));
}

}  // namespace numrad::testing
