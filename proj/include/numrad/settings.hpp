#pragma once

#include <cstddef>

namespace numrad {

// Central numerical knobs. Defaults are the reference values; the CLI
// exposes --grid, --refine-tol and --tol-cmp.
struct Settings {
  // Equispaced angles scanned before golden-section refinement.
  std::size_t grid = 1024;
  // Final bracket width of the angle refinement.
  double refine_tol = 1e-12;
  // Final bracket width of the alpha search on [0, 1].
  double alpha_tol = 1e-10;
  // Inequality comparison: lhs <= rhs + tol_cmp * max(1, |rhs|).
  double tol_cmp = 1e-8;
  // Tolerance for hypotheses/conclusions of implication checks.
  double tol_implication = 1e-6;
  // Intertwining precondition |A|B = B*|A| (relative Frobenius residual).
  double tol_intertwine = 1e-10;
};

inline const Settings& default_settings() {
  static const Settings s{};
  return s;
}

}  // namespace numrad
