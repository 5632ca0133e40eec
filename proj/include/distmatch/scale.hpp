#pragma once

#include <cmath>
#include <compare>
#include <stdexcept>

namespace distmatch {

/// A power-of-two radius 2^exponent. Only the integer exponent is stored.
struct Scale {
  int exponent = 0;

  double value() const { return std::ldexp(1.0, exponent); }
  Scale doubled() const { return Scale{exponent + 1}; }
  Scale halved() const { return Scale{exponent - 1}; }

  friend auto operator<=>(const Scale&, const Scale&) = default;
};

/// Smallest power of two that is >= v. Exact powers of two map to themselves.
inline Scale scale_for(double v) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw std::invalid_argument("scale_for: value must be positive and finite");
  }
  int e = 0;
  const double mantissa = std::frexp(v, &e);  // v = mantissa * 2^e, mantissa in [0.5, 1)
  return Scale{mantissa == 0.5 ? e - 1 : e};
}

/// Largest power of two that is <= v.
inline Scale scale_floor(double v) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw std::invalid_argument("scale_floor: value must be positive and finite");
  }
  int e = 0;
  std::frexp(v, &e);
  return Scale{e - 1};
}

}  // namespace distmatch
