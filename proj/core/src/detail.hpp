#pragma once

#include <cmath>
#include <limits>

namespace simpsym::detail {

inline constexpr double kWindowTop = 2.8284271247461903;  // 2*sqrt(2) rounded

// |s^2 - 8| below this counts as sitting on the elimination pole.  No
// representable product omega*h squares to exactly 8, so an exact compare
// would never fire; four ulps of 8 catches configs specified as precisely
// as doubles allow while keeping everything 1e-12 or farther away valid.
inline constexpr double kPoleHalfWidth =
    4.0 * 8.0 * std::numeric_limits<double>::epsilon();

inline bool on_elimination_pole(double s_sq) {
  return std::fabs(s_sq - 8.0) <= kPoleHalfWidth;
}

// a*b - c*d with an fma rescue of both low parts; relative error stays a
// couple of ulps even under full cancellation.
inline double diff_of_products(double a, double b, double c, double d) {
  const double cd = c * d;
  const double err = std::fma(c, d, -cd);
  const double dop = std::fma(a, b, -cd);
  return dop - err;
}

}  // namespace simpsym::detail
