#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace heatfis {

/// The three linguistic regions every variable is partitioned into.
enum class Region : int { low = 0, mid = 1, high = 2 };

constexpr std::array<Region, 3> kRegions = {Region::low, Region::mid,
                                            Region::high};

constexpr std::string_view to_string(Region r) {
  switch (r) {
    case Region::low:
      return "low";
    case Region::mid:
      return "mid";
    case Region::high:
      return "high";
  }
  return "?";
}

inline std::optional<Region> region_from_string(std::string_view name) {
  if (name == "low") return Region::low;
  if (name == "mid") return Region::mid;
  if (name == "high") return Region::high;
  return std::nullopt;
}

/// Closed interval a variable lives on; regions are defined over it.
struct Universe {
  double lo;
  double hi;

  Universe(double lo_, double hi_) : lo(lo_), hi(hi_) {
    if (!(lo < hi)) {
      throw std::invalid_argument("universe is degenerate: lo must be < hi");
    }
  }

  double clamp(double x) const { return std::clamp(x, lo, hi); }
  double midpoint() const { return (lo + hi) / 2.0; }
  bool operator==(const Universe&) const = default;
};

/// Triangle with feet a, c and peak b. a == b or b == c makes a shoulder.
struct TriangularMf {
  double a;
  double b;
  double c;
  bool operator==(const TriangularMf&) const = default;
};

/// Membership grade of x in mf. A slope whose denominator is zero is
/// dropped from the min, which turns the edge triangles into shoulders
/// that hold grade 1 past the peak.
inline double membership(double x, const TriangularMf& mf) {
  double grade = 1.0;
  if (mf.b > mf.a) grade = std::min(grade, (x - mf.a) / (mf.b - mf.a));
  if (mf.c > mf.b) grade = std::min(grade, (mf.c - x) / (mf.c - mf.b));
  return std::max(grade, 0.0);
}

struct MembershipGrades {
  double low;
  double mid;
  double high;

  double operator[](Region r) const {
    switch (r) {
      case Region::low:
        return low;
      case Region::mid:
        return mid;
      case Region::high:
        return high;
    }
    return 0.0;
  }
};

/// Low/mid/high triangles over a universe, shaped so the three grades of
/// any in-universe value sum to exactly one.
struct Partition {
  TriangularMf low;
  TriangularMf mid;
  TriangularMf high;
  Universe universe;
  bool operator==(const Partition&) const = default;
};

inline Partition build_partition(const Universe& u) {
  const double m = u.midpoint();
  return Partition{
      TriangularMf{u.lo, u.lo, m},   // left shoulder
      TriangularMf{u.lo, m, u.hi},   // isosceles
      TriangularMf{m, u.hi, u.hi},   // right shoulder
      u,
  };
}

inline Universe universe_from_data(const std::vector<double>& values) {
  if (values.size() < 2) {
    throw std::invalid_argument("universe needs at least 2 values");
  }
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  if (!(*lo < *hi)) {
    throw std::invalid_argument("universe is degenerate: all values equal");
  }
  return Universe(*lo, *hi);
}

/// Grades of x in all three regions. x outside the universe is clamped to
/// the nearest bound first, so the partition-of-unity property is kept.
inline MembershipGrades fuzzify(double x, const Partition& p) {
  const double cx = p.universe.clamp(x);
  return MembershipGrades{membership(cx, p.low), membership(cx, p.mid),
                          membership(cx, p.high)};
}

/// Region with the largest grade; ties go to the first of low < mid < high.
inline Region classify_max(const MembershipGrades& g) {
  if (g.low <= 0.0 && g.mid <= 0.0 && g.high <= 0.0) {
    throw std::domain_error("cannot classify: all membership grades are zero");
  }
  Region best = Region::low;
  double best_grade = g.low;
  if (g.mid > best_grade) {
    best = Region::mid;
    best_grade = g.mid;
  }
  if (g.high > best_grade) {
    best = Region::high;
  }
  return best;
}

}  // namespace heatfis
