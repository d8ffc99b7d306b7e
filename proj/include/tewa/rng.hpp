#pragma once

#include <cstdint>
#include <random>

namespace tewa {

/// Seedable source for shot adjudication. The engine is std::mt19937_64,
/// whose output sequence is fixed by the C++ standard, and doubles are
/// built from the top 53 bits by hand rather than through
/// std::uniform_real_distribution (whose algorithm is implementation
/// defined). Draws therefore replay identically on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace tewa
