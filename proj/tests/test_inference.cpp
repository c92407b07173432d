#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "heatfis/inference.hpp"
#include "heatfis/synth.hpp"
#include "support/oracles.hpp"

using namespace heatfis;
using Catch::Matchers::WithinAbs;

namespace {

// Partitions from the reference measurement regime.
RuleBase make_rule_base(std::vector<FuzzyRule> rules) {
  const Universe hi_u(23.34, 25.70);
  return RuleBase{build_partition(Universe(68.0, 84.0)),
                  build_partition(Universe(23.0, 26.0)),
                  build_partition(hi_u),
                  consequent_centers(hi_u),
                  std::move(rules)};
}

Dataset synthetic_training(std::uint64_t seed, std::size_t n,
                           double noise = 0.02) {
  GeneratorConfig cfg;
  cfg.n = n;
  cfg.seed = seed;
  cfg.noise_std = noise;
  return generate(cfg);
}

}  // namespace

TEST_CASE("fulfillment multiplies the two antecedent grades") {
  const RuleBase rb = make_rule_base(
      {FuzzyRule{Region::mid, Region::mid, Region::mid, 1.0},
       FuzzyRule{Region::high, Region::mid, Region::mid, 0.5}});

  const Fulfillment at_peaks = fulfillment(76.0, 24.5, rb);
  CHECK(at_peaks.degrees[0] == 1.0);
  CHECK(at_peaks.degrees[1] == 0.0);  // rh=76 has zero high grade

  const Fulfillment off_peak = fulfillment(70.0, 23.0, rb);
  CHECK(off_peak.degrees[0] == 0.0);  // t=23 has zero mid grade
  CHECK(off_peak.degrees[1] == 0.0);

  std::mt19937 gen(3);
  std::uniform_real_distribution<double> rh(60.0, 90.0);
  std::uniform_real_distribution<double> t(22.0, 27.0);
  for (int i = 0; i < 200; ++i) {
    for (double d : fulfillment(rh(gen), t(gen), rb).degrees) {
      REQUIRE(d >= 0.0);
      REQUIRE(d <= 1.0);
    }
  }
}

TEST_CASE("a single firing rule predicts its center exactly") {
  const RuleBase rb = make_rule_base(
      {FuzzyRule{Region::mid, Region::mid, Region::mid, 1.0}});
  const Prediction p = predict_one(76.0, 24.5, rb);
  CHECK_FALSE(p.fallback_used);
  CHECK(p.hi == rb.centers.effective(Region::mid));  // bit-exact

  // Exactness must survive a fractional fulfillment.
  const Prediction partial = predict_one(70.0, 24.5, rb);
  CHECK_FALSE(partial.fallback_used);
  CHECK(partial.hi == rb.centers.effective(Region::mid));
}

TEST_CASE("two rules firing 50/50 blend their centers") {
  const RuleBase rb = make_rule_base(
      {FuzzyRule{Region::low, Region::mid, Region::low, 1.0},
       FuzzyRule{Region::mid, Region::mid, Region::mid, 1.0}});
  // rh=72 grades low and mid both 0.5; t=24.5 grades mid 1.
  const Fulfillment f = fulfillment(72.0, 24.5, rb);
  CHECK(f.degrees[0] == 0.5);
  CHECK(f.degrees[1] == 0.5);
  const Prediction p = predict_one(72.0, 24.5, rb);
  CHECK_THAT(p.hi, WithinAbs(23.93, 1e-12));
}

TEST_CASE("scaling every fulfillment leaves the prediction unchanged") {
  std::mt19937 gen(7);
  const RuleBase rb = learn_rules(synthetic_training(101, 500));
  std::uniform_real_distribution<double> rh(60.0, 90.0);
  std::uniform_real_distribution<double> t(22.0, 27.0);
  for (int i = 0; i < 200; ++i) {
    const Fulfillment f = fulfillment(rh(gen), t(gen), rb);
    double total = 0.0;
    for (double d : f.degrees) total += d;
    if (total <= 0.0) continue;
    Fulfillment scaled = f;
    for (double& d : scaled.degrees) d *= 7.0;
    REQUIRE_THAT(weighted_center(scaled, rb),
                 WithinAbs(weighted_center(f, rb), 1e-12));
  }
}

TEST_CASE("uncovered antecedent corners fall back to the closest rule") {
  // No rule covers (low, low); both stored rules have zero fulfillment at
  // the universe minima.
  const RuleBase rb = make_rule_base(
      {FuzzyRule{Region::high, Region::low, Region::low, 0.8},
       FuzzyRule{Region::mid, Region::high, Region::high, 0.9}});
  const Prediction p = predict_one(68.0, 23.0, rb);
  CHECK(p.fallback_used);
  // antecedent grade sums: (high,low) -> 0+1=1, (mid,high) -> 0+0=0
  CHECK(p.hi == rb.centers.effective(Region::low));

  const Prediction covered = predict_one(76.0, 26.0, rb);
  CHECK_FALSE(covered.fallback_used);
}

TEST_CASE("predict_batch preserves order and counts fallbacks") {
  const RuleBase rb = make_rule_base(
      {FuzzyRule{Region::mid, Region::mid, Region::mid, 1.0}});

  CHECK(predict_batch(Dataset{}, rb).values.empty());

  Dataset batch;
  batch.samples.push_back(Sample{76.0, 24.5, 0.0});
  batch.samples.push_back(Sample{68.0, 23.0, 0.0});  // (low,low): fallback
  const BatchPrediction out = predict_batch(batch, rb);
  REQUIRE(out.values.size() == 2);
  CHECK_THAT(out.values[0], WithinAbs(24.52, 1e-12));
  CHECK(out.fallback_count == 1);
}

TEST_CASE("non-fallback predictions stay inside the center hull") {
  const RuleBase base = learn_rules(synthetic_training(211, 2000));
  RuleBase rb = base;
  rb.centers.offset = {0.4, -0.2, -1.0};  // effective centers reorder freely
  double lo = rb.centers.effective(Region::low);
  double hi = lo;
  for (Region r : kRegions) {
    lo = std::min(lo, rb.centers.effective(r));
    hi = std::max(hi, rb.centers.effective(r));
  }
  std::mt19937 gen(13);
  std::uniform_real_distribution<double> rh(50.0, 100.0);
  std::uniform_real_distribution<double> t(20.0, 30.0);
  for (int i = 0; i < 20000; ++i) {
    const Prediction p = predict_one(rh(gen), t(gen), rb);
    if (p.fallback_used) continue;
    REQUIRE(p.hi >= lo);
    REQUIRE(p.hi <= hi);
  }
}

TEST_CASE("prediction varies continuously over a full rule base") {
  const RuleBase rb = learn_rules(synthetic_training(307, 4000));
  REQUIRE(rb.rules.size() == 9);  // all antecedent pairs covered
  const int n = 300;
  const double rh_lo = rb.rh.universe.lo;
  const double rh_hi = rb.rh.universe.hi;
  const double t_lo = rb.t.universe.lo;
  const double t_hi = rb.t.universe.hi;
  double center_span = 0.0;
  for (Region a : kRegions) {
    for (Region b : kRegions) {
      center_span = std::max(center_span,
                             std::abs(rb.centers.effective(a) -
                                      rb.centers.effective(b)));
    }
  }
  // With all 9 rules present the surface is piecewise bilinear; adjacent
  // grid samples can differ by at most a few center-spans over one cell.
  const double bound = 8.0 * center_span / n;
  double worst = 0.0;
  for (int i = 0; i <= n; ++i) {
    double prev = 0.0;
    for (int j = 0; j <= n; ++j) {
      const double rh = rh_lo + (rh_hi - rh_lo) * i / n;
      const double t = t_lo + (t_hi - t_lo) * j / n;
      const Prediction p = predict_one(rh, t, rb);
      REQUIRE_FALSE(p.fallback_used);
      if (j > 0) worst = std::max(worst, std::abs(p.hi - prev));
      prev = p.hi;
    }
  }
  CHECK(worst <= bound);
}

TEST_CASE("offset grid contains zero and has the documented cardinality") {
  CHECK(detail::offset_axis(0.5) ==
        std::vector<double>{-1.0, -0.5, 0.0, 0.5, 1.0});
  CHECK(detail::offset_axis(0.05).size() == 41);
  const auto odd = detail::offset_axis(0.3);
  CHECK(std::any_of(odd.begin(), odd.end(),
                    [](double v) { return v == 0.0; }));
  CHECK_THROWS_AS(detail::offset_axis(0.0), std::invalid_argument);
}

TEST_CASE("optimize_offsets keeps zero offsets when the base fit is exact") {
  RuleBase rb = learn_rules(synthetic_training(401, 300));
  Dataset train;
  std::mt19937 gen(17);
  std::uniform_real_distribution<double> rh(68.0, 84.0);
  std::uniform_real_distribution<double> t(23.0, 26.0);
  for (int i = 0; i < 200; ++i) {
    Sample s{rh(gen), t(gen), 0.0};
    s.hi = predict_one(s.rh, s.t, rb).hi;  // the model is already perfect
    train.samples.push_back(s);
  }
  OffsetSearchReport report;
  const RuleBase tuned = optimize_offsets(rb, train, 0.5, &report);
  CHECK(report.candidates == 125);
  CHECK(tuned.centers.offset == std::array<double, 3>{0.0, 0.0, 0.0});
}

TEST_CASE("a uniform target shift is recovered to within one grid step") {
  RuleBase rb = learn_rules(synthetic_training(419, 300));
  Dataset train;
  std::mt19937 gen(19);
  std::uniform_real_distribution<double> rh(68.0, 84.0);
  std::uniform_real_distribution<double> t(23.0, 26.0);
  for (int i = 0; i < 200; ++i) {
    Sample s{rh(gen), t(gen), 0.0};
    s.hi = predict_one(s.rh, s.t, rb).hi + 0.3;
    train.samples.push_back(s);
  }
  const double step = 0.1;
  const RuleBase tuned = optimize_offsets(rb, train, step);
  for (double off : tuned.centers.offset) {
    REQUIRE_THAT(off, WithinAbs(0.3, step + 1e-9));
  }
}

TEST_CASE("optimize_offsets agrees with the grid search done the slow way") {
  std::mt19937 gen(23);
  for (int trial = 0; trial < 4; ++trial) {
    const RuleBase rb = learn_rules(
        synthetic_training(500 + trial, 120, /*noise=*/0.3));
    const Dataset train = synthetic_training(600 + trial, 40, /*noise=*/0.3);
    const RuleBase fast = optimize_offsets(rb, train, 0.25);
    const auto slow = oracle::naive_offset_search(rb, train, 0.25);
    CHECK(fast.centers.offset == slow);
  }
}

TEST_CASE("optimized offsets never degrade training fit or leave [-1,1]") {
  const Dataset train = synthetic_training(701, 400, /*noise=*/0.1);
  const RuleBase rb = learn_rules(train);
  const auto y_true = column(train, Attribute::hi);

  auto train_sse = [&](const RuleBase& model) {
    double sse = 0.0;
    for (const Sample& s : train.samples) {
      const double p = predict_one(s.rh, s.t, model).hi;
      sse += (s.hi - p) * (s.hi - p);
    }
    return sse;
  };
  const double sse_before = train_sse(rb);
  for (double step : {0.2, 0.33}) {  // 0.33 forces the inserted-zero path
    const RuleBase tuned = optimize_offsets(rb, train, step);
    for (double off : tuned.centers.offset) {
      REQUIRE(off >= -1.0);
      REQUIRE(off <= 1.0);
    }
    REQUIRE(train_sse(tuned) <= sse_before + 1e-9);
  }
}

TEST_CASE("fulfillment and prediction require a non-empty rule base") {
  const RuleBase rb = make_rule_base({});
  CHECK_THROWS_AS(fulfillment(70.0, 24.0, rb), std::invalid_argument);
  CHECK_THROWS_AS(predict_one(70.0, 24.0, rb), std::invalid_argument);
}
