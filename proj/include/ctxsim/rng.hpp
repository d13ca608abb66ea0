#pragma once

#include <cstdint>
#include <random>

#include "ctxsim/common.hpp"

namespace ctxsim {

// Deterministic RNG wrapper. std::uniform_real_distribution is
// implementation-defined, so doubles are derived from raw 64-bit draws to keep
// seeded runs byte-reproducible across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t raw() { return gen_(); }

  // uniform in [0, 1)
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // standard normal, Box-Muller (fixed algorithm, no cached spare)
  double gaussian() {
    double u1 = uniform();
    double u2 = uniform();
    while (u1 <= 1e-300) u1 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }

  Cx gaussian_cx() { return Cx(gaussian(), gaussian()); }

  // integer in [0, n)
  std::uint64_t below(std::uint64_t n) { return gen_() % n; }

 private:
  std::mt19937_64 gen_;
};

}  // namespace ctxsim
