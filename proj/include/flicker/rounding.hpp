// Rounding without libm calls; each helper is exact for every double.

#pragma once

#include <cmath>
#include <cstdint>

namespace flicker {

// Same result as std::round.
inline double round_half_away(double x) {
  if (!(std::abs(x) < 0x1p52)) return x;  // already integral, or not finite
  const double r = static_cast<double>(static_cast<std::int64_t>(x));
  const double frac = x - r;
  if (frac >= 0.5) return r + 1.0;
  if (frac <= -0.5) return r - 1.0;
  return r;
}

// Same result as std::floor.
inline double floor_exact(double x) {
  if (!(std::abs(x) < 0x1p52)) return x;
  const double r = static_cast<double>(static_cast<std::int64_t>(x));
  return r > x ? r - 1.0 : r;
}

// Nearest 8-bit code value, saturating; NaN maps to 0.
inline std::uint8_t to_byte(double x) {
  if (!(x > 0.0)) return 0;
  if (x >= 255.0) return 255;
  const int r = static_cast<int>(x);
  return static_cast<std::uint8_t>(r + (x - r >= 0.5 ? 1 : 0));
}

}  // namespace flicker
