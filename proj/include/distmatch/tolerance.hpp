#pragma once

#include <algorithm>
#include <cmath>

namespace distmatch {

// Relative tolerance shared by every threshold comparison in the library.
inline constexpr double kRelTol = 1e-9;
// Absolute fallback for comparisons near zero.
inline constexpr double kAbsTol = 1e-12;

inline double slack(double a, double b) {
  return std::max(kRelTol * std::max(std::abs(a), std::abs(b)), kAbsTol);
}

/// a <= b up to tolerance.
inline bool approx_leq(double a, double b) { return a <= b + slack(a, b); }

/// a >= b up to tolerance.
inline bool approx_geq(double a, double b) { return approx_leq(b, a); }

/// Inclusive radius test used by all fixed-radius queries.
inline bool within_radius(double d, double radius) {
  return approx_leq(d, radius);
}

}  // namespace distmatch
