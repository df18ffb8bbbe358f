#pragma once

#include <cstdint>
#include <random>

namespace altfix {

// Deterministic random source. The raw engine is std::mt19937_64 (stable
// output across platforms by the standard); the real-valued mappings are
// spelled out here rather than taken from <random> distributions, whose
// algorithms are implementation-defined — trajectories must be bit-identical
// for a given seed everywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t raw() { return engine_(); }

  // Uniform on [0,1) with 53 random bits.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform01();
  }

  // Uniform on {lo, ..., hi} inclusive, by rejection (unbiased).
  int uniform_int(int lo, int hi);

  // Standard normal via Box-Muller (the trigonometric form; no cached
  // spare, so the draw count per call is fixed).
  double normal();

 private:
  std::mt19937_64 engine_;
};

}  // namespace altfix
