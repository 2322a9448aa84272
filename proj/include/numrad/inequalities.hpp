#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "numrad/cmatrix.hpp"
#include "numrad/settings.hpp"

namespace numrad {

enum class Sign { none, plus, minus };

const char* to_string(Sign s);  // "n/a", "+", "-"
std::optional<Sign> parse_sign(std::string_view s);

// lhs <= rhs + tol * max(1, |rhs|)
bool within_bound(double lhs, double rhs, double tol);

struct LinkReport {
  std::string label;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  bool holds = true;
};

// One evaluated instance of a catalog entry. For chains, `links` holds each
// consecutive comparison and the top-level lhs/rhs are the bounded quantity
// and its final bound.
struct BoundReport {
  std::string id;
  Sign sign = Sign::none;
  bool applicable = false;
  std::optional<double> lhs;
  std::optional<double> rhs;
  std::optional<double> slack;
  bool holds = false;
  std::string reason;  // set when not applicable
  std::string inputs_digest;
  std::vector<LinkReport> links;
  std::map<std::string, double> details;
};

struct CatalogEntry {
  std::string id;
  std::size_t arity = 1;
  bool signed_variants = false;
  std::vector<std::string> inputs;  // positional names
  std::string precondition;
  std::string formula;
};

// Stable order; ids are unique.
const std::vector<CatalogEntry>& catalog_list();
const CatalogEntry* find_entry(std::string_view id);

class UnknownInequality : public std::invalid_argument {
 public:
  explicit UnknownInequality(const std::string& id);
};

class ArityMismatch : public std::invalid_argument {
 public:
  ArityMismatch(const std::string& id, std::size_t expected, std::size_t got);
};

struct EvalParams {
  // Exponent of f(t) = t^s, g(t) = t^{1-s} in I-GEN-FG.
  double s = 0.5;
};

// Evaluate one entry. Signed entries need Sign::plus or Sign::minus;
// unsigned entries need Sign::none. Throws UnknownInequality / ArityMismatch /
// std::invalid_argument for a wrong sign. A failed precondition produces an
// inapplicable report instead of an exception.
BoundReport evaluate(std::string_view id, std::span<const CMatrix> inputs, Sign sign = Sign::none,
                     const Settings& s = default_settings(), const EvalParams& p = {});

// Every sign variant of the entry (one report for unsigned entries).
std::vector<BoundReport> evaluate_variants(std::string_view id, std::span<const CMatrix> inputs,
                                           const Settings& s = default_settings(),
                                           const EvalParams& p = {});

// (||A||^2 + ||B||^2 + sqrt((||A||^2 - ||B||^2)^2 + 4 ||BA||^2)) / 2
double mu(const CMatrix& a, const CMatrix& b);

// Residual ||(|A| B - B* |A|)||_F of the intertwining condition.
double intertwining_residual(const CMatrix& a, const CMatrix& b);

// Implications checked in the forward direction only.
//   IMP-ZERO-PRODUCT   r(|A||A*|) = 0                      =>  w(A) = ||A||/2
//   IMP-KIT03-EQUALITY w(A) = (||A|| + sqrt||A^2||)/2      =>  r(|A||A*|) = ||A^2||
//   IMP-FONG-EQUALITY  w(AB +- BA) = 2 sqrt2 ||B|| w(A)    =>  c(Re A) = c(Im A) = 0
//   IMP-MAIN-EQUALITY  w(A) = ||A|| or r(|A||A*|) = 0      =>  w(A) = (||A|| + sqrt r(|A||A*|))/2
// For the last one, w(A) = ||A|| is the finite-dimensional characterization
// of "A is unitarily similar to [alpha] (+) B with ||B|| <= |alpha|".
struct ImplicationReport {
  std::string id;
  Sign sign = Sign::none;
  bool hypothesis_holds = false;
  bool conclusion_holds = false;
  std::string inputs_digest;
  std::map<std::string, double> details;

  // False only when the hypothesis holds and the conclusion does not.
  bool consistent() const { return !hypothesis_holds || conclusion_holds; }
};

struct ImplicationEntry {
  std::string id;
  std::size_t arity;
  bool signed_variants;
  std::string statement;
};
const std::vector<ImplicationEntry>& implication_list();

ImplicationReport check_implication(std::string_view id, std::span<const CMatrix> inputs,
                                    Sign sign = Sign::none,
                                    const Settings& s = default_settings());

}  // namespace numrad
