#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "numrad/settings.hpp"

namespace numrad {

inline constexpr int kExitPass = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitUsage = 2;

struct ReproCheck {
  std::string example;
  std::string quantity;
  double value = 0.0;
  double expected = 0.0;
  double tol = 0.0;
  // Either |value - expected| <= tol, or value > expected for orderings.
  bool strict_greater = false;
  bool pass = false;
};

// The worked examples with their expected values. `fault` of the form
// "example:quantity" shifts that expectation by 1 to exercise the failure path.
std::vector<ReproCheck> repro_checks(const Settings& s = default_settings(),
                                     const std::string& fault = "");

// Full command line without the program name, e.g. {"check", "a.json"}.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace numrad
