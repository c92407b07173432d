#pragma once

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "heatfis/random.hpp"

namespace heatfis {

/// One observation: relative humidity (%), temperature (degC), heat index
/// (degC).
struct Sample {
  double rh = 0.0;
  double t = 0.0;
  double hi = 0.0;
  bool operator==(const Sample&) const = default;
};

enum class Attribute : int { rh = 0, t = 1, hi = 2 };

constexpr std::array<Attribute, 3> kAttributes = {Attribute::rh, Attribute::t,
                                                  Attribute::hi};

constexpr std::string_view to_string(Attribute a) {
  switch (a) {
    case Attribute::rh:
      return "rh";
    case Attribute::t:
      return "t";
    case Attribute::hi:
      return "hi";
  }
  return "?";
}

inline double get(const Sample& s, Attribute a) {
  switch (a) {
    case Attribute::rh:
      return s.rh;
    case Attribute::t:
      return s.t;
    case Attribute::hi:
      return s.hi;
  }
  return 0.0;
}

struct Dataset {
  std::vector<Sample> samples;
  std::string source;

  std::size_t size() const { return samples.size(); }
  bool empty() const { return samples.empty(); }
};

inline std::vector<double> column(const Dataset& d, Attribute a) {
  std::vector<double> out;
  out.reserve(d.size());
  for (const Sample& s : d.samples) out.push_back(get(s, a));
  return out;
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

inline std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(trim(line.substr(start)));
      break;
    }
    fields.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
  return fields;
}

inline bool parse_double(std::string_view field, double& out) {
  if (field.empty()) return false;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  if (*first == '+') ++first;  // from_chars rejects a leading '+'
  const auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec == std::errc::result_out_of_range && ptr == last) {
    // overflowed literals count as non-finite, not as parse failures
    out = field.front() == '-' ? -std::numeric_limits<double>::infinity()
                               : std::numeric_limits<double>::infinity();
    return true;
  }
  return ec == std::errc() && ptr == last;
}

inline std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace detail

/// Reads rh,t,hi rows (a leading timestamp column is skipped in 4-column
/// rows). Non-numeric fields are an error; numerically valid rows that are
/// physically impossible (non-finite, rh outside [0,100]) are dropped and
/// counted. When has_header is false the first row is still skipped if it
/// does not parse as data.
inline Dataset parse_csv_stream(std::istream& in, bool has_header = false,
                                std::size_t* dropped = nullptr) {
  Dataset d;
  if (dropped) *dropped = 0;
  std::string line;
  std::size_t line_no = 0;
  bool first_content_row = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    const auto fields = detail::split_fields(line);
    if (first_content_row && has_header) {
      first_content_row = false;
      continue;
    }
    if (fields.size() != 3 && fields.size() != 4) {
      throw std::runtime_error("row " + std::to_string(line_no) +
                               ": expected 3 or 4 columns, got " +
                               std::to_string(fields.size()));
    }
    const std::size_t offset = fields.size() == 4 ? 1 : 0;
    Sample s;
    bool ok = detail::parse_double(fields[offset + 0], s.rh) &&
              detail::parse_double(fields[offset + 1], s.t) &&
              detail::parse_double(fields[offset + 2], s.hi);
    if (!ok) {
      if (first_content_row) {  // unlabeled header row
        first_content_row = false;
        continue;
      }
      throw std::runtime_error("row " + std::to_string(line_no) +
                               ": non-numeric field");
    }
    first_content_row = false;
    const bool physical = std::isfinite(s.rh) && std::isfinite(s.t) &&
                          std::isfinite(s.hi) && s.rh >= 0.0 && s.rh <= 100.0;
    if (!physical) {
      if (dropped) ++*dropped;
      continue;
    }
    d.samples.push_back(s);
  }
  return d;
}

inline Dataset parse_csv(const std::string& path, bool has_header = false,
                         std::size_t* dropped = nullptr) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open '" + path + "' for reading");
  }
  Dataset d = parse_csv_stream(in, has_header, dropped);
  d.source = path;
  return d;
}

/// (rh, t) input pairs for prediction. Accepts 2-column rh,t files as well
/// as the 3/4-column dataset layouts (the hi column is ignored there).
inline std::vector<std::pair<double, double>> parse_pairs_stream(
    std::istream& in) {
  std::vector<std::pair<double, double>> out;
  std::string line;
  std::size_t line_no = 0;
  bool first_content_row = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    const auto fields = detail::split_fields(line);
    if (fields.size() < 2 || fields.size() > 4) {
      throw std::runtime_error("row " + std::to_string(line_no) +
                               ": expected 2 to 4 columns, got " +
                               std::to_string(fields.size()));
    }
    const std::size_t offset = fields.size() == 4 ? 1 : 0;
    double rh = 0.0;
    double t = 0.0;
    const bool ok = detail::parse_double(fields[offset + 0], rh) &&
                    detail::parse_double(fields[offset + 1], t);
    if (!ok) {
      if (first_content_row) {
        first_content_row = false;
        continue;
      }
      throw std::runtime_error("row " + std::to_string(line_no) +
                               ": non-numeric field");
    }
    first_content_row = false;
    out.emplace_back(rh, t);
  }
  return out;
}

inline std::vector<std::pair<double, double>> parse_pairs(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open '" + path + "' for reading");
  }
  return parse_pairs_stream(in);
}

/// Writes the dataset back out; numbers use the shortest representation
/// that round-trips exactly. with_timestamps emits the 4-column layout
/// with synthetic integer timestamps at 50-second spacing.
inline void write_csv_stream(const Dataset& d, std::ostream& out,
                             bool with_timestamps = false) {
  out << (with_timestamps ? "timestamp,rh,t,hi\n" : "rh,t,hi\n");
  for (std::size_t i = 0; i < d.samples.size(); ++i) {
    const Sample& s = d.samples[i];
    if (with_timestamps) out << i * 50 << ',';
    out << detail::format_double(s.rh) << ',' << detail::format_double(s.t)
        << ',' << detail::format_double(s.hi) << '\n';
  }
}

inline void write_csv(const Dataset& d, const std::string& path,
                      bool with_timestamps = false) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot open '" + path + "' for writing");
  }
  write_csv_stream(d, out, with_timestamps);
  if (!out.good()) {
    throw std::runtime_error("write to '" + path + "' failed");
  }
}

/// Quantile by linear interpolation on the sorted sample: position
/// q*(n-1), value interpolated between the two neighbours.
inline double interpolated_quantile(std::vector<double> values, double q) {
  if (values.empty()) {
    throw std::invalid_argument("quantile of empty sample");
  }
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const auto idx = static_cast<std::size_t>(pos);
  const double frac = pos - static_cast<double>(idx);
  if (idx + 1 >= values.size()) return values.back();
  return values[idx] + frac * (values[idx + 1] - values[idx]);
}

struct CleanResult {
  Dataset data;
  std::size_t removed = 0;
};

/// IQR outlier removal: fences are computed per attribute over the input,
/// and a row is dropped when any of its three attributes falls outside
/// [Q1 - k*IQR, Q3 + k*IQR]. Surviving order is preserved.
inline CleanResult iqr_clean(const Dataset& d, double k = 1.5) {
  if (d.size() < 4) {
    throw std::invalid_argument("iqr_clean needs at least 4 rows");
  }
  if (!(k > 0.0)) {
    throw std::invalid_argument("iqr_clean fence multiplier must be > 0");
  }
  std::array<double, 3> fence_lo{};
  std::array<double, 3> fence_hi{};
  for (Attribute a : kAttributes) {
    const auto values = column(d, a);
    const double q1 = interpolated_quantile(values, 0.25);
    const double q3 = interpolated_quantile(values, 0.75);
    const double iqr = q3 - q1;
    fence_lo[static_cast<int>(a)] = q1 - k * iqr;
    fence_hi[static_cast<int>(a)] = q3 + k * iqr;
  }
  CleanResult result;
  result.data.source = d.source;
  for (const Sample& s : d.samples) {
    bool keep = true;
    for (Attribute a : kAttributes) {
      const double v = get(s, a);
      const int i = static_cast<int>(a);
      if (v < fence_lo[i] || v > fence_hi[i]) {
        keep = false;
        break;
      }
    }
    if (keep) {
      result.data.samples.push_back(s);
    } else {
      ++result.removed;
    }
  }
  return result;
}

struct SplitResult {
  Dataset train;
  Dataset test;
};

/// Seeded uniform shuffle, then the first floor(fraction*n) rows become the
/// training set. Identical (dataset, fraction, seed) give identical splits.
inline SplitResult split_train_test(const Dataset& d, double train_fraction,
                                    std::uint64_t seed) {
  if (d.size() < 2) {
    throw std::invalid_argument("split needs at least 2 rows");
  }
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw std::invalid_argument("train fraction must be in (0, 1)");
  }
  std::vector<std::size_t> order(d.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  Rng rng(seed);
  shuffle(order, rng);
  // Guard against representation error in fraction*n (e.g. 0.7*10).
  const auto train_n = static_cast<std::size_t>(
      std::floor(train_fraction * static_cast<double>(d.size()) + 1e-9));
  SplitResult split;
  split.train.source = d.source;
  split.test.source = d.source;
  split.train.samples.reserve(train_n);
  split.test.samples.reserve(d.size() - train_n);
  for (std::size_t i = 0; i < order.size(); ++i) {
    (i < train_n ? split.train : split.test).samples.push_back(
        d.samples[order[i]]);
  }
  return split;
}

struct AttributeStats {
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation, n-1 denominator
  double min = 0.0;
  double max = 0.0;
};

struct SummaryStats {
  AttributeStats rh;
  AttributeStats t;
  AttributeStats hi;

  const AttributeStats& operator[](Attribute a) const {
    switch (a) {
      case Attribute::rh:
        return rh;
      case Attribute::t:
        return t;
      case Attribute::hi:
        return hi;
    }
    return rh;
  }
};

namespace detail {

inline AttributeStats stats_of(const std::vector<double>& values) {
  AttributeStats st;
  const auto n = static_cast<double>(values.size());
  double sum = 0.0;
  st.min = values.front();
  st.max = values.front();
  for (double v : values) {
    sum += v;
    st.min = std::min(st.min, v);
    st.max = std::max(st.max, v);
  }
  st.mean = sum / n;
  double ss = 0.0;
  for (double v : values) ss += (v - st.mean) * (v - st.mean);
  st.stddev = std::sqrt(ss / (n - 1.0));
  return st;
}

}  // namespace detail

inline SummaryStats describe(const Dataset& d) {
  if (d.size() < 2) {
    throw std::invalid_argument("describe needs at least 2 rows");
  }
  return SummaryStats{detail::stats_of(column(d, Attribute::rh)),
                      detail::stats_of(column(d, Attribute::t)),
                      detail::stats_of(column(d, Attribute::hi))};
}

/// Product-moment correlation. Both series must be non-constant.
inline double pearson(const std::vector<double>& x,
                      const std::vector<double>& y) {
  if (x.size() != y.size()) {
    throw std::invalid_argument("pearson: length mismatch");
  }
  if (x.size() < 2) {
    throw std::invalid_argument("pearson needs at least 2 values");
  }
  const auto n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double cov = 0.0;
  double vx = 0.0;
  double vy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    cov += (x[i] - mx) * (y[i] - my);
    vx += (x[i] - mx) * (x[i] - mx);
    vy += (y[i] - my) * (y[i] - my);
  }
  if (vx == 0.0 || vy == 0.0) {
    throw std::invalid_argument("pearson: constant series has no correlation");
  }
  return std::clamp(cov / std::sqrt(vx * vy), -1.0, 1.0);
}

}  // namespace heatfis
