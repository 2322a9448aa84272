#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "numrad/cmatrix.hpp"

namespace numrad {

enum class Family {
  ginibre,
  hermitian_gauss,
  normal,
  unitary,
  nilpotent_rank1,
  alpha_oplus_B,
  intertwined_pair,
  nilpotent_pair,
  jordan_shifted,
  psd_pair,
};

const char* to_string(Family f);
std::optional<Family> parse_family(std::string_view s);
const std::vector<Family>& all_families();

// Pair families produce exactly two correlated matrices; every other family
// produces any number of independent draws.
bool is_pair_family(Family f);
bool family_supports_arity(Family f, std::size_t arity);

struct EnsembleSpec {
  Family family = Family::ginibre;
  std::size_t n = 2;
  std::uint64_t seed = 0;
  // Optional family parameters:
  //   alpha_oplus_B:  alpha_re, alpha_im (random per trial when absent)
  //   jordan_shifted: lambda_re, lambda_im, mu (random per trial when absent)
  std::map<std::string, double> params;
};

class InvalidEnsemble : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Deterministic in (spec, trial, arity) only.
std::vector<CMatrix> draw(const EnsembleSpec& spec, std::uint64_t trial, std::size_t arity = 1);

// U ([alpha] (+) B) U* for unitary U of size n = 1 + B.n().
CMatrix alpha_oplus(cplx alpha, const CMatrix& b, const CMatrix& u);
// A = e1 e2*, B = e2 e1* in dimension n.
std::pair<CMatrix, CMatrix> canonical_nilpotent_pair(std::size_t n);

// "example2x2" -> [[1,4],[1,1]], "example3x3" -> [[0,3,0],[0,0,0],[0,0,1]].
CMatrix worked_example(std::string_view name);

}  // namespace numrad
