#pragma once

// Piecewise-linear membership functions. Every index in the decision
// pipeline is squashed into [0, 1] through one of these.

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <utility>

namespace tewa::fuzzy {

inline double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

/// 0 at or below lo, 1 at or above hi, linear in between. A degenerate
/// range (lo == hi) is a step at lo.
inline double ramp(double v, double lo, double hi) {
  if (hi <= lo) return v >= lo ? 1.0 : 0.0;
  return clamp01((v - lo) / (hi - lo));
}

/// Score that falls from 1 (t <= full) to 0 (t >= zero).
inline double inverse_time(double t, double full, double zero) { return 1.0 - ramp(t, full, zero); }

/// Weighted mean of (weight, term) pairs; 0 when all weights vanish.
inline double weighted_mean(std::initializer_list<std::pair<double, double>> terms) {
  double num = 0.0;
  double den = 0.0;
  for (auto [w, v] : terms) {
    num += w * v;
    den += w;
  }
  return den > 0.0 ? clamp01(num / den) : 0.0;
}

}  // namespace tewa::fuzzy
