#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace heatfis {

// Seeded engine used everywhere randomness is consumed. The draw helpers
// below are hand-rolled because the <random> distributions are
// implementation-defined and would break reproducibility across toolchains.
using Rng = std::mt19937_64;

/// Uniform double in [0, 1) built from the top 53 bits of one draw.
inline double uniform_unit(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform_in(Rng& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform_unit(rng);
}

/// Unbiased integer in [0, bound) via rejection on a power-of-two mask.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  std::uint64_t mask = bound - 1;
  mask |= mask >> 1;
  mask |= mask >> 2;
  mask |= mask >> 4;
  mask |= mask >> 8;
  mask |= mask >> 16;
  mask |= mask >> 32;
  std::uint64_t draw = rng() & mask;
  while (draw >= bound) {
    draw = rng() & mask;
  }
  return draw;
}

/// Standard normal deviate (Marsaglia polar, one fresh pair per call).
inline double gaussian(Rng& rng) {
  while (true) {
    const double u = 2.0 * uniform_unit(rng) - 1.0;
    const double v = 2.0 * uniform_unit(rng) - 1.0;
    const double s = u * u + v * v;
    if (s > 0.0 && s < 1.0) {
      return u * std::sqrt(-2.0 * std::log(s) / s);
    }
  }
}

/// Fisher-Yates shuffle driven by uniform_below, identical on every platform.
template <typename T>
void shuffle(std::vector<T>& values, Rng& rng) {
  for (std::size_t i = values.size(); i > 1; --i) {
    std::swap(values[i - 1], values[uniform_below(rng, i)]);
  }
}

}  // namespace heatfis
