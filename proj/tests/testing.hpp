#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>

namespace simpsym::testing {

// Monotone integer image of a double (IEEE754 lexicographic trick).
inline std::int64_t ordered_bits(double x) {
  const auto bits = std::bit_cast<std::int64_t>(x);
  return bits >= 0 ? bits : std::numeric_limits<std::int64_t>::min() - bits;
}

// Distance in representable doubles; NaN anywhere maps to max.
inline std::uint64_t ulp_diff(double a, double b) {
  if (std::isnan(a) || std::isnan(b)) {
    return std::numeric_limits<std::uint64_t>::max();
  }
  const std::int64_t ia = ordered_bits(a);
  const std::int64_t ib = ordered_bits(b);
  const std::uint64_t diff =
      static_cast<std::uint64_t>(ia) - static_cast<std::uint64_t>(ib);
  return ia >= ib ? diff : 0 - diff;
}

inline std::mt19937 seeded_rng(std::uint32_t seed) { return std::mt19937{seed}; }

inline double uniform(std::mt19937& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>{lo, hi}(rng);
}

}  // namespace simpsym::testing
