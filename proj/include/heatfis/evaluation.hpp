#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "heatfis/dataset.hpp"
#include "heatfis/inference.hpp"

namespace heatfis {

// ---------------------------------------------------------------------------
// Elementary error measures
// ---------------------------------------------------------------------------

inline double mean_absolute_error(const std::vector<double>& y_true,
                                  const std::vector<double>& y_pred) {
  if (y_true.size() != y_pred.size() || y_true.empty()) {
    throw std::invalid_argument("mae: need equal, non-zero lengths");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < y_true.size(); ++i) {
    sum += std::abs(y_true[i] - y_pred[i]);
  }
  return sum / static_cast<double>(y_true.size());
}

inline double root_mean_squared_error(const std::vector<double>& y_true,
                                      const std::vector<double>& y_pred) {
  if (y_true.size() != y_pred.size() || y_true.empty()) {
    throw std::invalid_argument("rmse: need equal, non-zero lengths");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < y_true.size(); ++i) {
    const double e = y_true[i] - y_pred[i];
    sum += e * e;
  }
  return std::sqrt(sum / static_cast<double>(y_true.size()));
}

/// Coefficient of determination, 1 - SSE/SST. Can go negative for a model
/// worse than the mean; requires non-constant y_true.
inline double r_squared(const std::vector<double>& y_true,
                        const std::vector<double>& y_pred) {
  if (y_true.size() != y_pred.size() || y_true.size() < 2) {
    throw std::invalid_argument("r2: need equal lengths >= 2");
  }
  double mean = 0.0;
  for (double y : y_true) mean += y;
  mean /= static_cast<double>(y_true.size());
  double sse = 0.0;
  double sst = 0.0;
  for (std::size_t i = 0; i < y_true.size(); ++i) {
    sse += (y_true[i] - y_pred[i]) * (y_true[i] - y_pred[i]);
    sst += (y_true[i] - mean) * (y_true[i] - mean);
  }
  if (sst == 0.0) {
    throw std::invalid_argument("r2 is undefined for constant y_true");
  }
  return 1.0 - sse / sst;
}

// ---------------------------------------------------------------------------
// Regularized incomplete beta (for the F-test p-value)
// ---------------------------------------------------------------------------

namespace detail {

/// Continued fraction for the incomplete beta, modified Lentz scheme.
inline double beta_continued_fraction(double a, double b, double x) {
  constexpr int kMaxIterations = 300;
  constexpr double kEps = 3.0e-15;
  constexpr double kTiny = 1.0e-300;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
    const auto md = static_cast<double>(m);
    const double m2 = 2.0 * md;
    double aa = md * (b - md) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + md) * (qab + md) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) return h;
  }
  throw std::runtime_error("incomplete beta did not converge");
}

}  // namespace detail

/// I_x(a, b), the regularized incomplete beta function.
inline double regularized_incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw std::invalid_argument("incomplete beta needs a > 0 and b > 0");
  }
  if (x < 0.0 || x > 1.0) {
    throw std::invalid_argument("incomplete beta needs x in [0, 1]");
  }
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) -
                           std::lgamma(b) + a * std::log(x) +
                           b * std::log1p(-x);
  const double front = std::exp(log_front);
  // Pick the representation whose continued fraction converges fast.
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * detail::beta_continued_fraction(a, b, x) / a;
  }
  return 1.0 - front * detail::beta_continued_fraction(b, a, 1.0 - x) / b;
}

/// Upper tail of the F distribution with (df1, df2) degrees of freedom.
inline double f_distribution_upper_tail(double f, long long df1,
                                        long long df2) {
  if (f <= 0.0) return 1.0;
  if (std::isinf(f)) return 0.0;
  const auto d1 = static_cast<double>(df1);
  const auto d2 = static_cast<double>(df2);
  return regularized_incomplete_beta(d2 / 2.0, d1 / 2.0, d2 / (d2 + d1 * f));
}

// ---------------------------------------------------------------------------
// F-test of the regression of observations on predictions
// ---------------------------------------------------------------------------

struct FTestResult {
  double f_stat = 0.0;
  long long df1 = 1;
  long long df2 = 0;
  double p_value = 1.0;
  double r_squared = 0.0;  // squared correlation of y_true and y_pred
};

/// F = (n-2) R^2 / (1 - R^2) for a simple regression with n observations.
inline double f_statistic_from_r2(double r2_regression, std::size_t n) {
  return static_cast<double>(n - 2) * r2_regression / (1.0 - r2_regression);
}

/// Simple-regression F-test: F = (n-2) R^2 / (1 - R^2) on df (1, n-2),
/// where R^2 is the squared Pearson correlation. A perfect correlation is
/// reported as an infinite F with p = 0.
inline FTestResult f_test(const std::vector<double>& y_true,
                          const std::vector<double>& y_pred) {
  if (y_true.size() != y_pred.size() || y_true.size() < 3) {
    throw std::invalid_argument("f_test: need equal lengths >= 3");
  }
  const double r = pearson(y_true, y_pred);  // rejects constant series
  const double r2 = r * r;
  FTestResult out;
  out.df1 = 1;
  out.df2 = static_cast<long long>(y_true.size()) - 2;
  out.r_squared = r2;
  if (r2 >= 1.0) {
    out.f_stat = std::numeric_limits<double>::infinity();
    out.p_value = 0.0;
    return out;
  }
  out.f_stat = f_statistic_from_r2(r2, y_true.size());
  out.p_value = f_distribution_upper_tail(out.f_stat, out.df1, out.df2);
  return out;
}

// ---------------------------------------------------------------------------
// Aggregate metrics
// ---------------------------------------------------------------------------

struct Metrics {
  double r2 = 0.0;  // 1 - SSE/SST
  double rmse = 0.0;
  double mae = 0.0;
  double f_stat = 0.0;
  long long df1 = 1;
  long long df2 = 0;
  double p_value = 1.0;
  double r2_regression = 0.0;  // squared correlation, the F-test's R^2
};

inline Metrics compute_metrics(const std::vector<double>& y_true,
                               const std::vector<double>& y_pred) {
  if (y_true.size() != y_pred.size() || y_true.size() < 3) {
    throw std::invalid_argument("metrics: need equal lengths >= 3");
  }
  Metrics m;
  m.r2 = r_squared(y_true, y_pred);
  m.rmse = root_mean_squared_error(y_true, y_pred);
  m.mae = mean_absolute_error(y_true, y_pred);
  const FTestResult ft = f_test(y_true, y_pred);
  m.f_stat = ft.f_stat;
  m.df1 = ft.df1;
  m.df2 = ft.df2;
  m.p_value = ft.p_value;
  m.r2_regression = ft.r_squared;
  return m;
}

// ---------------------------------------------------------------------------
// Residual analysis
// ---------------------------------------------------------------------------

struct ErrorAnalysis {
  std::vector<double> abs_errors;
  std::vector<double> residuals;  // y_true - y_pred
  double overprediction_fraction = 0.0;
  double min_abs_error = 0.0;
  double max_abs_error = 0.0;
};

inline ErrorAnalysis error_analysis(const std::vector<double>& y_true,
                                    const std::vector<double>& y_pred) {
  if (y_true.size() != y_pred.size() || y_true.empty()) {
    throw std::invalid_argument("error_analysis: need equal non-zero lengths");
  }
  ErrorAnalysis out;
  out.residuals.reserve(y_true.size());
  out.abs_errors.reserve(y_true.size());
  std::size_t over = 0;
  for (std::size_t i = 0; i < y_true.size(); ++i) {
    const double r = y_true[i] - y_pred[i];
    out.residuals.push_back(r);
    out.abs_errors.push_back(std::abs(r));
    if (r < 0.0) ++over;  // negative residual = model predicted high
  }
  out.overprediction_fraction =
      static_cast<double>(over) / static_cast<double>(y_true.size());
  const auto [mn, mx] =
      std::minmax_element(out.abs_errors.begin(), out.abs_errors.end());
  out.min_abs_error = *mn;
  out.max_abs_error = *mx;
  return out;
}

// ---------------------------------------------------------------------------
// Multiple linear regression baseline: hi ~ 1 + rh + t
// ---------------------------------------------------------------------------

struct LinearModel {
  double b0 = 0.0;  // intercept, degC
  double b1 = 0.0;  // degC per % relative humidity
  double b2 = 0.0;  // degC per degC temperature
};

namespace detail {

/// 3x3 linear solve, Gaussian elimination with partial pivoting.
inline std::array<double, 3> solve3(std::array<std::array<double, 3>, 3> a,
                                    std::array<double, 3> rhs) {
  double scale = 0.0;
  for (const auto& row : a) {
    for (double v : row) scale = std::max(scale, std::abs(v));
  }
  for (int col = 0; col < 3; ++col) {
    int pivot = col;
    for (int row = col + 1; row < 3; ++row) {
      if (std::abs(a[row][col]) > std::abs(a[pivot][col])) pivot = row;
    }
    if (std::abs(a[pivot][col]) <= 1e-12 * scale) {
      throw std::invalid_argument(
          "normal equations are singular (collinear design columns)");
    }
    std::swap(a[col], a[pivot]);
    std::swap(rhs[col], rhs[pivot]);
    for (int row = col + 1; row < 3; ++row) {
      const double factor = a[row][col] / a[col][col];
      for (int k = col; k < 3; ++k) a[row][k] -= factor * a[col][k];
      rhs[row] -= factor * rhs[col];
    }
  }
  std::array<double, 3> x{};
  for (int row = 2; row >= 0; --row) {
    double sum = rhs[row];
    for (int k = row + 1; k < 3; ++k) sum -= a[row][k] * x[k];
    x[row] = sum / a[row][row];
  }
  return x;
}

}  // namespace detail

/// Ordinary least squares of hi on (1, rh, t) via the normal equations.
inline LinearModel fit_mlr(const Dataset& train) {
  if (train.size() < 4) {
    throw std::invalid_argument("fit_mlr needs at least 4 rows");
  }
  std::array<std::array<double, 3>, 3> xtx{};
  std::array<double, 3> xty{};
  for (const Sample& s : train.samples) {
    const std::array<double, 3> row{1.0, s.rh, s.t};
    for (int i = 0; i < 3; ++i) {
      xty[i] += row[i] * s.hi;
      for (int j = 0; j < 3; ++j) xtx[i][j] += row[i] * row[j];
    }
  }
  const auto beta = detail::solve3(xtx, xty);
  return LinearModel{beta[0], beta[1], beta[2]};
}

inline std::vector<double> predict_mlr(const LinearModel& m,
                                       const Dataset& samples) {
  std::vector<double> out;
  out.reserve(samples.size());
  for (const Sample& s : samples.samples) {
    out.push_back(m.b0 + m.b1 * s.rh + m.b2 * s.t);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Side-by-side report
// ---------------------------------------------------------------------------

enum class ReportFormat { text, csv };

namespace detail {

inline std::string format_metric_row(const char* name, const Metrics& m,
                                     ReportFormat format) {
  char buf[160];
  if (format == ReportFormat::csv) {
    std::snprintf(buf, sizeof(buf), "%s,%.6f,%.6f,%.6f,%.3f,%.6g", name, m.r2,
                  m.rmse, m.mae, m.f_stat, m.p_value);
  } else {
    std::snprintf(buf, sizeof(buf), "%-6s %10.6f %10.6f %10.6f %14.3f %10.6g",
                  name, m.r2, m.rmse, m.mae, m.f_stat, m.p_value);
  }
  return buf;
}

}  // namespace detail

/// Two-row comparison (fuzzy model vs MLR baseline) over the same test set.
inline std::string compare_report(const Dataset& test, const RuleBase& rb,
                                  const LinearModel& m,
                                  ReportFormat format = ReportFormat::text) {
  if (test.empty()) {
    throw std::invalid_argument("compare_report needs a non-empty test set");
  }
  const std::vector<double> y_true = column(test, Attribute::hi);
  const Metrics fuzzy =
      compute_metrics(y_true, predict_batch(test, rb).values);
  const Metrics mlr = compute_metrics(y_true, predict_mlr(m, test));
  std::string out;
  if (format == ReportFormat::csv) {
    out += "model,r2,rmse,mae,f_stat,p_value\n";
  } else {
    char header[160];
    std::snprintf(header, sizeof(header), "%-6s %10s %10s %10s %14s %10s\n",
                  "model", "r2", "rmse", "mae", "f_stat", "p_value");
    out += header;
  }
  out += detail::format_metric_row("fuzzy", fuzzy, format);
  out += '\n';
  out += detail::format_metric_row("mlr", mlr, format);
  out += '\n';
  return out;
}

}  // namespace heatfis
