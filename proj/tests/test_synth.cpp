#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <map>

#include "heatfis/heat_index.hpp"
#include "heatfis/synth.hpp"

using namespace heatfis;
using Catch::Matchers::WithinAbs;

TEST_CASE("temperature conversions round-trip") {
  for (double c : {-40.0, 0.0, 37.0, 100.0}) {
    CHECK_THAT(fahrenheit_to_celsius(celsius_to_fahrenheit(c)),
               WithinAbs(c, 1e-12));
  }
  CHECK(celsius_to_fahrenheit(-40.0) == -40.0);  // the fixed point
  CHECK(celsius_to_fahrenheit(0.0) == 32.0);
  CHECK(fahrenheit_to_celsius(212.0) == 100.0);
}

TEST_CASE("heat index below the regression threshold uses the simple formula") {
  // 0.5 * (80 + 61 + (80-68)*1.2 + 40*0.094) = 79.58
  CHECK_THAT(heat_index_fahrenheit(80.0, 40.0), WithinAbs(79.58, 1e-12));
  CHECK(std::round(heat_index_fahrenheit(80.0, 40.0)) == 80.0);
  CHECK_THAT(heat_index_noaa(fahrenheit_to_celsius(80.0), 40.0),
             WithinAbs(fahrenheit_to_celsius(79.58), 1e-9));
}

TEST_CASE("heat index matches the published NWS chart within 1 degF") {
  // (T degF, RH %) -> chart heat index, from the NWS table.
  const std::map<std::pair<int, int>, int> chart = {
      {{80, 40}, 80},  {{80, 60}, 82},   {{80, 90}, 86},  {{84, 40}, 83},
      {{84, 60}, 88},  {{84, 90}, 98},   {{86, 45}, 87},  {{88, 55}, 93},
      {{90, 40}, 91},  {{90, 50}, 95},   {{90, 60}, 100}, {{90, 80}, 113},
      {{92, 65}, 108}, {{94, 75}, 124},  {{96, 40}, 101}, {{96, 60}, 116},
      {{98, 45}, 109}, {{100, 50}, 118}, {{104, 40}, 119}, {{110, 40}, 136},
  };
  for (const auto& [cell, expected] : chart) {
    const double got = heat_index_fahrenheit(cell.first, cell.second);
    INFO("T=" << cell.first << " RH=" << cell.second << " got " << got);
    CHECK(std::abs(std::round(got) - expected) <= 1.0);
  }
}

TEST_CASE("humidity adjustments to the regression are applied") {
  // Low-humidity correction subtracts from the raw regression value.
  CHECK_THAT(heat_index_fahrenheit(96.0, 10.0),
             WithinAbs(90.361582424891, 1e-9));
  // High-humidity correction adds (RH-85)/10 * (87-T)/5.
  CHECK_THAT(heat_index_fahrenheit(82.0, 90.0),
             WithinAbs(91.991677839999, 1e-9));
}

TEST_CASE("heat index rejects humidity outside [0, 100]") {
  CHECK_THROWS_AS(heat_index_fahrenheit(80.0, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(heat_index_fahrenheit(80.0, 100.5), std::invalid_argument);
  CHECK_THROWS_AS(heat_index_noaa(25.0, 101.0), std::invalid_argument);
}

TEST_CASE("heat index stays within [22, 28] degC over the data regime") {
  for (int ti = 0; ti <= 60; ++ti) {
    for (int rhi = 0; rhi <= 64; ++rhi) {
      const double t = 23.0 + 0.05 * ti;
      const double rh = 68.0 + 0.25 * rhi;
      const double hi = heat_index_noaa(t, rh);
      REQUIRE(hi >= 22.0);
      REQUIRE(hi <= 28.0);
    }
  }
}

TEST_CASE("heat index is monotone in temperature over the data regime") {
  for (int rhi = 0; rhi <= 16; ++rhi) {
    const double rh = 68.0 + 1.0 * rhi;
    double prev = heat_index_noaa(23.0, rh);
    for (int ti = 1; ti <= 30; ++ti) {
      const double hi = heat_index_noaa(23.0 + 0.1 * ti, rh);
      REQUIRE(hi >= prev - 1e-12);
      prev = hi;
    }
  }
}

TEST_CASE("generate is deterministic in the seed") {
  GeneratorConfig cfg;
  cfg.n = 5;
  cfg.seed = 7;
  cfg.noise_std = 0.1;
  const Dataset a = generate(cfg);
  const Dataset b = generate(cfg);
  CHECK(a.samples == b.samples);
  cfg.seed = 8;
  CHECK(generate(cfg).samples != a.samples);
}

TEST_CASE("zero-noise samples satisfy the heat-index equation exactly") {
  GeneratorConfig cfg;
  cfg.n = 500;
  cfg.seed = 3;
  const Dataset d = generate(cfg);
  for (const Sample& s : d.samples) {
    REQUIRE(s.hi == heat_index_noaa(s.t, s.rh));
  }
}

TEST_CASE("generated values respect the configured ranges") {
  GeneratorConfig cfg;
  cfg.n = 20000;
  cfg.seed = 1;
  const Dataset d = generate(cfg);
  REQUIRE(d.size() == 20000);
  for (const Sample& s : d.samples) {
    REQUIRE(s.rh >= 68.0);
    REQUIRE(s.rh <= 84.0);
    REQUIRE(s.t >= 23.0);
    REQUIRE(s.t <= 26.0);
  }
}

TEST_CASE("walk mode stays in range and drifts smoothly") {
  GeneratorConfig cfg;
  cfg.n = 5000;
  cfg.seed = 9;
  cfg.walk = true;
  const Dataset d = generate(cfg);
  double max_step = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    const Sample& s = d.samples[i];
    REQUIRE(s.rh >= 68.0);
    REQUIRE(s.rh <= 84.0);
    REQUIRE(s.t >= 23.0);
    REQUIRE(s.t <= 26.0);
    if (i > 0) {
      max_step = std::max(max_step,
                          std::abs(s.rh - d.samples[i - 1].rh));
    }
  }
  // steps are a small fraction of the span, unlike iid uniform draws
  CHECK(max_step < 2.0);
  CHECK(generate(cfg).samples == d.samples);
}

TEST_CASE("quantize mode reports integer rh and t with consistent hi") {
  GeneratorConfig cfg;
  cfg.n = 2000;
  cfg.seed = 4;
  cfg.quantize = true;
  const Dataset d = generate(cfg);
  std::map<std::pair<double, double>, double> seen;
  for (const Sample& s : d.samples) {
    REQUIRE(s.rh == std::round(s.rh));
    REQUIRE(s.t == std::round(s.t));
    const auto key = std::make_pair(s.rh, s.t);
    const auto it = seen.find(key);
    if (it == seen.end()) {
      seen.emplace(key, s.hi);
    } else {
      REQUIRE(it->second == s.hi);  // duplicates carry identical hi
    }
  }
  CHECK(seen.size() < d.size());  // quantization produced duplicates
}

TEST_CASE("generator rejects invalid configurations") {
  GeneratorConfig cfg;
  cfg.n = 0;
  CHECK_THROWS_AS(generate(cfg), std::invalid_argument);
  cfg.n = 10;
  cfg.rh_lo = 84.0;
  cfg.rh_hi = 68.0;
  CHECK_THROWS_AS(generate(cfg), std::invalid_argument);
  cfg.rh_lo = 68.0;
  cfg.rh_hi = 110.0;
  CHECK_THROWS_AS(generate(cfg), std::invalid_argument);
  cfg.rh_hi = 84.0;
  cfg.noise_std = -0.1;
  CHECK_THROWS_AS(generate(cfg), std::invalid_argument);
}
