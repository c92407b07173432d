#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "heatfis/dataset.hpp"
#include "heatfis/heat_index.hpp"
#include "heatfis/random.hpp"

namespace heatfis {

/// Ground-truth generator settings. Defaults reproduce the measurement
/// regime the model is meant for (rh 68-84 %, t 23-26 degC).
struct GeneratorConfig {
  std::size_t n = 1;
  std::uint64_t seed = 0;
  double rh_lo = 68.0;
  double rh_hi = 84.0;
  double t_lo = 23.0;
  double t_hi = 26.0;
  double noise_std = 0.0;  // Gaussian noise on hi, degC
  bool walk = false;       // reflected random walk instead of iid draws
  bool quantize = false;   // round rh and t to integers (DHT11-style)
};

namespace detail {

/// Reflects x into [lo, hi]; walk steps are small so one or two bounces
/// always suffice.
inline double reflect_into(double x, double lo, double hi) {
  while (x < lo || x > hi) {
    if (x < lo) x = 2.0 * lo - x;
    if (x > hi) x = 2.0 * hi - x;
  }
  return x;
}

}  // namespace detail

/// Deterministic synthetic dataset: rh and t drawn per config, hi derived
/// from the NWS heat-index equations plus optional Gaussian noise.
inline Dataset generate(const GeneratorConfig& cfg) {
  if (cfg.n < 1) {
    throw std::invalid_argument("generator needs n >= 1");
  }
  if (!(cfg.rh_lo < cfg.rh_hi) || !(cfg.t_lo < cfg.t_hi)) {
    throw std::invalid_argument("generator ranges must be non-degenerate");
  }
  if (!(cfg.rh_lo >= 0.0 && cfg.rh_hi <= 100.0)) {
    throw std::invalid_argument("rh range must stay within [0, 100]");
  }
  if (cfg.noise_std < 0.0) {
    throw std::invalid_argument("noise_std must be >= 0");
  }
  Rng rng(cfg.seed);
  Dataset d;
  d.source = "synth(seed=" + std::to_string(cfg.seed) + ")";
  d.samples.reserve(cfg.n);
  // Walk state starts mid-range; step scale is 1% of the span per tick,
  // which gives slow day-scale drift like the original traces.
  double rh_pos = (cfg.rh_lo + cfg.rh_hi) / 2.0;
  double t_pos = (cfg.t_lo + cfg.t_hi) / 2.0;
  const double rh_step = (cfg.rh_hi - cfg.rh_lo) / 100.0;
  const double t_step = (cfg.t_hi - cfg.t_lo) / 100.0;
  for (std::size_t i = 0; i < cfg.n; ++i) {
    double rh;
    double t;
    if (cfg.walk) {
      rh_pos = detail::reflect_into(rh_pos + rh_step * gaussian(rng),
                                    cfg.rh_lo, cfg.rh_hi);
      t_pos = detail::reflect_into(t_pos + t_step * gaussian(rng), cfg.t_lo,
                                   cfg.t_hi);
      rh = rh_pos;
      t = t_pos;
    } else {
      rh = uniform_in(rng, cfg.rh_lo, cfg.rh_hi);
      t = uniform_in(rng, cfg.t_lo, cfg.t_hi);
    }
    if (cfg.quantize) {
      rh = std::round(rh);
      t = std::round(t);
    }
    double hi = heat_index_noaa(t, rh);
    if (cfg.noise_std > 0.0) {
      hi += cfg.noise_std * gaussian(rng);
    }
    d.samples.push_back(Sample{rh, t, hi});
  }
  return d;
}

}  // namespace heatfis
