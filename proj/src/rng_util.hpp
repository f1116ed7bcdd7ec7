#pragma once

#include <cmath>
#include <cstdint>
#include <random>

// Deterministic scalar draws built on the raw mt19937_64 stream. The standard
// distributions are implementation-defined, so fixed seeds would not pin
// byte-identical output across toolchains; these do.
namespace pmono::detail {

inline double unit_uniform(std::mt19937_64& g) {
  return std::ldexp(static_cast<double>(g() >> 11), -53);  // [0, 1)
}

inline double uniform(std::mt19937_64& g, double lo, double hi) {
  return lo + (hi - lo) * unit_uniform(g);
}

inline double gaussian(std::mt19937_64& g) {
  double u1 = 0.0;
  do {
    u1 = unit_uniform(g);
  } while (u1 <= 0.0);
  const double u2 = unit_uniform(g);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.28318530717958647692528676655900577 * u2);
}

}  // namespace pmono::detail
