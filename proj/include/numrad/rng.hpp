#pragma once

#include <cstdint>
#include <random>

#include "numrad/cmatrix.hpp"

namespace numrad {

// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

// Seed of the substream for one trial; depends only on (seed, trial).
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial);

// std::mt19937_64 with portable transforms on top. The standard library
// distributions are implementation-defined, so they are not used.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }
  // Uniform on [0, 1) with 53 random bits.
  double uniform();
  // Standard normal via Box-Muller.
  double normal();
  // Complex Gaussian with E|z|^2 = 1.
  cplx complex_normal();

 private:
  std::mt19937_64 eng_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace numrad
