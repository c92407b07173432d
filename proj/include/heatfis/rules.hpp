#pragma once

#include <array>
#include <cstdio>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "heatfis/dataset.hpp"
#include "heatfis/fuzzy.hpp"

namespace heatfis {

/// One learned rule: IF rh is <rh> AND t is <t> THEN hi is <hi>, weighted
/// by the degree of the sample that produced it.
struct FuzzyRule {
  Region rh = Region::low;
  Region t = Region::low;
  Region hi = Region::low;
  double degree = 0.0;  // in (0, 1]

  bool operator==(const FuzzyRule&) const = default;
};

/// Constant consequent values, one per heat-index region: the region's
/// full-membership point plus a tuned offset in [-1, 1].
struct ConsequentCenters {
  std::array<double, 3> base{};    // indexed by Region
  std::array<double, 3> offset{};  // tuning deltas, default 0

  double effective(Region r) const {
    return base[static_cast<int>(r)] + offset[static_cast<int>(r)];
  }
  bool operator==(const ConsequentCenters&) const = default;
};

inline ConsequentCenters consequent_centers(const Universe& hi_universe) {
  ConsequentCenters c;
  c.base = {hi_universe.lo, hi_universe.midpoint(), hi_universe.hi};
  return c;
}

/// The serializable model: per-variable partitions, the deduplicated rule
/// set (at most one rule per antecedent pair, so at most 9), and the
/// consequent centers used for defuzzification.
struct RuleBase {
  Partition rh;
  Partition t;
  Partition hi;
  ConsequentCenters centers;
  std::vector<FuzzyRule> rules;  // sorted by antecedent index

  const FuzzyRule* find(Region rh_label, Region t_label) const {
    for (const FuzzyRule& r : rules) {
      if (r.rh == rh_label && r.t == t_label) return &r;
    }
    return nullptr;
  }
  bool operator==(const RuleBase&) const = default;
};

namespace detail {

inline int antecedent_index(Region rh, Region t) {
  return static_cast<int>(rh) * 3 + static_cast<int>(t);
}

}  // namespace detail

/// Candidate rule for one sample: each attribute goes to its max-grade
/// region, and the degree is the product of the three winning grades.
inline FuzzyRule rule_from_sample(const Sample& s, const Partition& rh_p,
                                  const Partition& t_p,
                                  const Partition& hi_p) {
  const MembershipGrades g_rh = fuzzify(s.rh, rh_p);
  const MembershipGrades g_t = fuzzify(s.t, t_p);
  const MembershipGrades g_hi = fuzzify(s.hi, hi_p);
  FuzzyRule rule;
  rule.rh = classify_max(g_rh);
  rule.t = classify_max(g_t);
  rule.hi = classify_max(g_hi);
  rule.degree = g_rh[rule.rh] * g_t[rule.t] * g_hi[rule.hi];
  return rule;
}

/// Learns rules inside externally supplied partitions. Per antecedent pair
/// only the highest-degree rule survives; an equal-degree conflict keeps
/// the rule from the earliest sample.
inline RuleBase learn_rules(const Dataset& train, const Partition& rh_p,
                            const Partition& t_p, const Partition& hi_p) {
  if (train.empty()) {
    throw std::invalid_argument("cannot learn rules from an empty dataset");
  }
  RuleBase rb{rh_p, t_p, hi_p, consequent_centers(hi_p.universe), {}};
  std::array<std::optional<FuzzyRule>, 9> best;
  for (const Sample& s : train.samples) {
    const FuzzyRule rule = rule_from_sample(s, rh_p, t_p, hi_p);
    auto& slot = best[detail::antecedent_index(rule.rh, rule.t)];
    if (!slot || rule.degree > slot->degree) slot = rule;
  }
  for (const auto& slot : best) {
    if (slot) rb.rules.push_back(*slot);
  }
  return rb;
}

/// Full Wang-Mendel pass: universes and partitions come from the training
/// data itself, then rules are extracted as above.
inline RuleBase learn_rules(const Dataset& train) {
  Partition partitions[3] = {
      build_partition(universe_from_data(column(train, Attribute::rh))),
      build_partition(universe_from_data(column(train, Attribute::t))),
      build_partition(universe_from_data(column(train, Attribute::hi)))};
  return learn_rules(train, partitions[0], partitions[1], partitions[2]);
}

/// One proposition line per rule, strongest first.
inline std::string render_rules(const RuleBase& rb) {
  if (rb.rules.empty()) {
    throw std::invalid_argument("cannot render an empty rule base");
  }
  std::vector<FuzzyRule> ordered = rb.rules;
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const FuzzyRule& a, const FuzzyRule& b) {
                     return a.degree > b.degree;
                   });
  std::string out;
  for (const FuzzyRule& r : ordered) {
    char degree[32];
    std::snprintf(degree, sizeof(degree), "%.6f", r.degree);
    out += "IF relative humidity is ";
    out += to_string(r.rh);
    out += " and temperature is ";
    out += to_string(r.t);
    out += " THEN heat index is ";
    out += to_string(r.hi);
    out += " (degree ";
    out += degree;
    out += ")\n";
  }
  return out;
}

}  // namespace heatfis
