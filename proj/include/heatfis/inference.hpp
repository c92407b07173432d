#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "heatfis/dataset.hpp"
#include "heatfis/rules.hpp"

namespace heatfis {

/// Degrees of fulfillment, aligned with rb.rules.
struct Fulfillment {
  std::vector<double> degrees;
};

/// D^r = grade of rh in the rule's rh region times grade of t in its t
/// region. Inputs are clamped to the stored universes first.
inline Fulfillment fulfillment(double rh, double t, const RuleBase& rb) {
  if (rb.rules.empty()) {
    throw std::invalid_argument("rule base is empty");
  }
  const MembershipGrades g_rh = fuzzify(rh, rb.rh);
  const MembershipGrades g_t = fuzzify(t, rb.t);
  Fulfillment f;
  f.degrees.reserve(rb.rules.size());
  for (const FuzzyRule& r : rb.rules) {
    f.degrees.push_back(g_rh[r.rh] * g_t[r.t]);
  }
  return f;
}

/// Fulfillment-weighted average of the effective consequent centers.
/// The result is clamped into the convex hull of the centers that
/// contributed, so rounding can never push it outside. Requires a
/// positive total fulfillment.
inline double weighted_center(const Fulfillment& f, const RuleBase& rb) {
  if (f.degrees.size() != rb.rules.size()) {
    throw std::invalid_argument("fulfillment does not match rule base");
  }
  double total = 0.0;
  for (double d : f.degrees) total += d;
  if (!(total > 0.0)) {
    throw std::domain_error("total fulfillment is zero");
  }
  double sum = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  bool first = true;
  for (std::size_t i = 0; i < rb.rules.size(); ++i) {
    if (f.degrees[i] <= 0.0) continue;
    const double center = rb.centers.effective(rb.rules[i].hi);
    sum += (f.degrees[i] / total) * center;
    lo = first ? center : std::min(lo, center);
    hi = first ? center : std::max(hi, center);
    first = false;
  }
  return std::clamp(sum, lo, hi);
}

namespace detail {

/// Rule whose two antecedent grades have the largest sum; used when no
/// rule fires at all. Ties keep the earliest rule in stored order.
inline std::size_t fallback_rule(double rh, double t, const RuleBase& rb) {
  const MembershipGrades g_rh = fuzzify(rh, rb.rh);
  const MembershipGrades g_t = fuzzify(t, rb.t);
  std::size_t best = 0;
  double best_sum = -1.0;
  for (std::size_t i = 0; i < rb.rules.size(); ++i) {
    const double s = g_rh[rb.rules[i].rh] + g_t[rb.rules[i].t];
    if (s > best_sum) {
      best_sum = s;
      best = i;
    }
  }
  return best;
}

}  // namespace detail

struct Prediction {
  double hi = 0.0;
  bool fallback_used = false;
};

inline Prediction predict_one(double rh, double t, const RuleBase& rb) {
  const Fulfillment f = fulfillment(rh, t, rb);
  double total = 0.0;
  for (double d : f.degrees) total += d;
  if (total > 0.0) {
    return {weighted_center(f, rb), false};
  }
  const std::size_t r = detail::fallback_rule(rh, t, rb);
  return {rb.centers.effective(rb.rules[r].hi), true};
}

struct BatchPrediction {
  std::vector<double> values;
  std::size_t fallback_count = 0;
};

inline BatchPrediction predict_batch(const Dataset& samples,
                                     const RuleBase& rb) {
  BatchPrediction out;
  out.values.reserve(samples.size());
  for (const Sample& s : samples.samples) {
    const Prediction p = predict_one(s.rh, s.t, rb);
    out.values.push_back(p.hi);
    if (p.fallback_used) ++out.fallback_count;
  }
  return out;
}

struct OffsetSearchReport {
  std::size_t candidates = 0;
  double train_r2 = 0.0;
  double train_rmse = 0.0;
};

namespace detail {

/// Grid values -1, -1+step, ... capped at 1, with 0 inserted when the step
/// does not land on it, so the search can never lose to the untuned model.
inline std::vector<double> offset_axis(double step) {
  if (!(step > 0.0)) {
    throw std::invalid_argument("offset grid step must be > 0");
  }
  std::vector<double> axis;
  for (std::size_t i = 0;; ++i) {
    const double v = -1.0 + static_cast<double>(i) * step;
    if (v > 1.0 + 1e-9) break;
    axis.push_back(std::min(v, 1.0));
  }
  const bool has_zero =
      std::any_of(axis.begin(), axis.end(),
                  [](double v) { return std::abs(v) < 1e-12; });
  if (!has_zero) {
    axis.push_back(0.0);
    std::sort(axis.begin(), axis.end());
  }
  return axis;
}

}  // namespace detail

/// Exhaustive search over offset triples in [-1,1]^3 maximizing training
/// R^2, with ties broken by lower RMSE, then smaller offset norm, then
/// lexicographic order.
///
/// Fulfillments do not depend on the offsets, so each prediction is affine
/// in the offset triple: p(o) = p0 + w.o with one weight per consequent
/// region. The SSE over the grid is then evaluated from a precomputed
/// 3x3 Gram matrix in O(1) per candidate.
inline RuleBase optimize_offsets(const RuleBase& rb, const Dataset& train,
                                 double step = 0.05,
                                 OffsetSearchReport* report = nullptr) {
  if (train.empty()) {
    throw std::invalid_argument("cannot optimize offsets on an empty dataset");
  }
  const std::vector<double> axis = detail::offset_axis(step);

  const auto n = static_cast<double>(train.size());
  double y_mean = 0.0;
  for (const Sample& s : train.samples) y_mean += s.hi;
  y_mean /= n;

  std::array<std::array<double, 3>, 3> gram{};
  std::array<double, 3> cross{};
  double residual_ss = 0.0;
  double total_ss = 0.0;
  for (const Sample& s : train.samples) {
    const Fulfillment f = fulfillment(s.rh, s.t, rb);
    double total = 0.0;
    for (double d : f.degrees) total += d;
    std::array<double, 3> w{};
    double base_pred = 0.0;
    if (total > 0.0) {
      for (std::size_t i = 0; i < rb.rules.size(); ++i) {
        const Region cons = rb.rules[i].hi;
        const double share = f.degrees[i] / total;
        w[static_cast<int>(cons)] += share;
        base_pred += share * rb.centers.base[static_cast<int>(cons)];
      }
    } else {
      const Region cons =
          rb.rules[detail::fallback_rule(s.rh, s.t, rb)].hi;
      w[static_cast<int>(cons)] = 1.0;
      base_pred = rb.centers.base[static_cast<int>(cons)];
    }
    const double r = s.hi - base_pred;
    residual_ss += r * r;
    total_ss += (s.hi - y_mean) * (s.hi - y_mean);
    for (int a = 0; a < 3; ++a) {
      cross[a] += r * w[a];
      for (int b = 0; b < 3; ++b) gram[a][b] += w[a] * w[b];
    }
  }

  std::array<double, 3> best{};
  double best_r2 = 0.0;
  double best_rmse = 0.0;
  double best_norm = 0.0;
  bool have_best = false;
  std::size_t candidates = 0;
  for (double ol : axis) {
    for (double om : axis) {
      for (double oh : axis) {
        ++candidates;
        const std::array<double, 3> o{ol, om, oh};
        double sse = residual_ss;
        for (int a = 0; a < 3; ++a) {
          sse -= 2.0 * o[a] * cross[a];
          for (int b = 0; b < 3; ++b) sse += o[a] * gram[a][b] * o[b];
        }
        sse = std::max(sse, 0.0);  // cancellation guard
        const double r2 =
            total_ss > 0.0 ? 1.0 - sse / total_ss : (sse == 0.0 ? 1.0 : 0.0);
        const double rmse = std::sqrt(sse / n);
        const double norm = ol * ol + om * om + oh * oh;
        // Tie chain: R^2, RMSE, offset norm, then lexicographic (the
        // iteration order), each compared exactly.
        bool better = false;
        if (!have_best || r2 > best_r2) {
          better = true;
        } else if (r2 == best_r2) {
          if (rmse < best_rmse) {
            better = true;
          } else if (rmse == best_rmse && norm < best_norm) {
            better = true;
          }
        }
        if (better) {
          best = o;
          best_r2 = r2;
          best_rmse = rmse;
          best_norm = norm;
          have_best = true;
        }
      }
    }
  }

  if (report) {
    report->candidates = candidates;
    report->train_r2 = best_r2;
    report->train_rmse = best_rmse;
  }
  RuleBase tuned = rb;
  tuned.centers.offset = best;
  return tuned;
}

}  // namespace heatfis
