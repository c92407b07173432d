#pragma once

#include <cmath>
#include <stdexcept>

namespace heatfis {

constexpr double celsius_to_fahrenheit(double c) { return c * 9.0 / 5.0 + 32.0; }
constexpr double fahrenheit_to_celsius(double f) { return (f - 32.0) * 5.0 / 9.0; }

/// NWS heat index in degF from temperature (degF) and relative humidity (%).
///
/// Steadman's simple formula (already averaged with the temperature) is
/// computed first; at 80 degF and above the Rothfusz regression takes over,
/// with the published low- and high-humidity corrections.
inline double heat_index_fahrenheit(double t_f, double rh) {
  if (!(rh >= 0.0 && rh <= 100.0)) {
    throw std::invalid_argument("relative humidity must be in [0, 100]");
  }
  const double simple = 0.5 * (t_f + 61.0 + (t_f - 68.0) * 1.2 + rh * 0.094);
  if (simple < 80.0) {
    return simple;
  }
  double hi = -42.379 + 2.04901523 * t_f + 10.14333127 * rh -
              0.22475541 * t_f * rh - 0.00683783 * t_f * t_f -
              0.05481717 * rh * rh + 0.00122874 * t_f * t_f * rh +
              0.00085282 * t_f * rh * rh - 0.00000199 * t_f * t_f * rh * rh;
  if (rh < 13.0 && t_f >= 80.0 && t_f <= 112.0) {
    hi -= ((13.0 - rh) / 4.0) * std::sqrt((17.0 - std::abs(t_f - 95.0)) / 17.0);
  } else if (rh > 85.0 && t_f >= 80.0 && t_f <= 87.0) {
    hi += ((rh - 85.0) / 10.0) * ((87.0 - t_f) / 5.0);
  }
  return hi;
}

/// Same computation with Celsius in and out.
inline double heat_index_noaa(double t_c, double rh) {
  return fahrenheit_to_celsius(heat_index_fahrenheit(celsius_to_fahrenheit(t_c), rh));
}

}  // namespace heatfis
