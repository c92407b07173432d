// heatfis command-line tool: synthesize, clean, and summarize heat-index
// data, learn a fuzzy rule base, and evaluate it against a linear baseline.

#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "heatfis/heatfis.hpp"

namespace {

using heatfis::Dataset;
using heatfis::ReportFormat;
using heatfis::RuleBase;

ReportFormat parse_format(const std::string& name) {
  return name == "csv" ? ReportFormat::csv : ReportFormat::text;
}

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

void emit_rows(const std::vector<std::pair<std::string, std::string>>& rows,
               ReportFormat format, std::ostream& out) {
  if (format == ReportFormat::csv) {
    out << "metric,value\n";
    for (const auto& [name, value] : rows) out << name << ',' << value << '\n';
    return;
  }
  for (const auto& [name, value] : rows) {
    char line[128];
    std::snprintf(line, sizeof(line), "%-12s %s\n", name.c_str(),
                  value.c_str());
    out << line;
  }
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot open '" + path + "' for writing");
  }
  out << content;
  if (!out.good()) {
    throw std::runtime_error("write to '" + path + "' failed");
  }
}

// ---------------------------------------------------------------------------

void run_synth(const heatfis::GeneratorConfig& cfg, const std::string& out) {
  const Dataset d = heatfis::generate(cfg);
  heatfis::write_csv(d, out, /*with_timestamps=*/true);
  std::cout << "wrote " << d.size() << " samples to " << out << "\n";
}

void run_clean(const std::string& input, const std::string& out, double iqr_k,
               bool timestamps) {
  std::size_t invalid = 0;
  const Dataset raw = heatfis::parse_csv(input, false, &invalid);
  const heatfis::CleanResult cleaned = heatfis::iqr_clean(raw, iqr_k);
  heatfis::write_csv(cleaned.data, out, timestamps);
  std::cout << "rows read: " << raw.size() + invalid << "\n"
            << "invalid rows dropped: " << invalid << "\n"
            << "outliers removed: " << cleaned.removed << "\n"
            << "rows written: " << cleaned.data.size() << "\n";
}

void run_stats(const std::string& input, ReportFormat format) {
  const Dataset d = heatfis::parse_csv(input);
  const heatfis::SummaryStats stats = heatfis::describe(d);
  std::ostream& out = std::cout;
  if (format == ReportFormat::csv) {
    out << "attribute,mean,std,min,max\n";
    for (auto a : heatfis::kAttributes) {
      const auto& st = stats[a];
      out << to_string(a) << ',' << fmt("%.4f", st.mean) << ','
          << fmt("%.4f", st.stddev) << ',' << fmt("%.4f", st.min) << ','
          << fmt("%.4f", st.max) << '\n';
    }
  } else {
    char line[160];
    std::snprintf(line, sizeof(line), "%-10s %10s %10s %10s %10s\n",
                  "attribute", "mean", "std", "min", "max");
    out << line;
    for (auto a : heatfis::kAttributes) {
      const auto& st = stats[a];
      std::snprintf(line, sizeof(line), "%-10s %10.4f %10.4f %10.4f %10.4f\n",
                    std::string(to_string(a)).c_str(), st.mean, st.stddev,
                    st.min, st.max);
      out << line;
    }
  }
  // Pairwise correlation matrix.
  const auto rh = column(d, heatfis::Attribute::rh);
  const auto t = column(d, heatfis::Attribute::t);
  const auto hi = column(d, heatfis::Attribute::hi);
  const double r_rh_t = heatfis::pearson(rh, t);
  const double r_rh_hi = heatfis::pearson(rh, hi);
  const double r_t_hi = heatfis::pearson(t, hi);
  if (format == ReportFormat::csv) {
    out << "pair,pearson\n"
        << "rh:t," << fmt("%.4f", r_rh_t) << "\n"
        << "rh:hi," << fmt("%.4f", r_rh_hi) << "\n"
        << "t:hi," << fmt("%.4f", r_t_hi) << "\n";
  } else {
    char line[160];
    out << "\n";
    std::snprintf(line, sizeof(line), "%-10s %10s %10s %10s\n", "pearson",
                  "rh", "t", "hi");
    out << line;
    std::snprintf(line, sizeof(line), "%-10s %10.4f %10.4f %10.4f\n", "rh",
                  1.0, r_rh_t, r_rh_hi);
    out << line;
    std::snprintf(line, sizeof(line), "%-10s %10.4f %10.4f %10.4f\n", "t",
                  r_rh_t, 1.0, r_t_hi);
    out << line;
    std::snprintf(line, sizeof(line), "%-10s %10.4f %10.4f %10.4f\n", "hi",
                  r_rh_hi, r_t_hi, 1.0);
    out << line;
  }
}

void run_train(const std::string& input, std::uint64_t seed, double split,
               bool optimize, double step, const std::string& out) {
  const Dataset d = heatfis::parse_csv(input);
  const heatfis::SplitResult parts = heatfis::split_train_test(d, split, seed);
  RuleBase rb = heatfis::learn_rules(parts.train);
  std::cout << "samples: " << d.size() << "\n"
            << "train: " << parts.train.size() << "  test: "
            << parts.test.size() << "\n"
            << "rules: " << rb.rules.size() << "\n";
  if (optimize) {
    heatfis::OffsetSearchReport report;
    rb = heatfis::optimize_offsets(rb, parts.train, step, &report);
    std::cout << "offset grid candidates: " << report.candidates << "\n"
              << "offsets: " << fmt("%g", rb.centers.offset[0]) << " "
              << fmt("%g", rb.centers.offset[1]) << " "
              << fmt("%g", rb.centers.offset[2]) << "\n"
              << "train r2: " << fmt("%.6f", report.train_r2) << "\n"
              << "train rmse: " << fmt("%.6f", report.train_rmse) << "\n";
  }
  heatfis::save_model(rb, out);
  std::cout << "model written to " << out << "\n";
}

void run_rules(const std::string& model_path) {
  const RuleBase rb = heatfis::load_model(model_path);
  std::cout << heatfis::render_rules(rb);
}

void run_predict(const std::string& model_path, const std::string& input,
                 const std::string& out_path) {
  const RuleBase rb = heatfis::load_model(model_path);
  const auto pairs = heatfis::parse_pairs(input);
  std::string out = "rh,t,hi,fallback\n";
  for (const auto& [rh, t] : pairs) {
    const heatfis::Prediction p = heatfis::predict_one(rh, t, rb);
    out += heatfis::detail::format_double(rh);
    out += ',';
    out += heatfis::detail::format_double(t);
    out += ',';
    out += heatfis::detail::format_double(p.hi);
    out += ',';
    out += p.fallback_used ? '1' : '0';
    out += '\n';
  }
  if (out_path.empty()) {
    std::cout << out;
  } else {
    write_text_file(out_path, out);
    std::cout << "wrote " << pairs.size() << " predictions to " << out_path
              << "\n";
  }
}

void run_evaluate(const std::string& model_path, const std::string& input,
                  std::uint64_t seed, double split, ReportFormat format) {
  const RuleBase rb = heatfis::load_model(model_path);
  const Dataset d = heatfis::parse_csv(input);
  const heatfis::SplitResult parts = heatfis::split_train_test(d, split, seed);
  const heatfis::BatchPrediction pred = heatfis::predict_batch(parts.test, rb);
  const auto y_true = column(parts.test, heatfis::Attribute::hi);
  const heatfis::Metrics m = heatfis::compute_metrics(y_true, pred.values);
  const heatfis::ErrorAnalysis errors =
      heatfis::error_analysis(y_true, pred.values);
  emit_rows(
      {
          {"r2", fmt("%.6f", m.r2)},
          {"rmse", fmt("%.6f", m.rmse)},
          {"mae", fmt("%.6f", m.mae)},
          {"f_stat", fmt("%.3f", m.f_stat)},
          {"df1", std::to_string(m.df1)},
          {"df2", std::to_string(m.df2)},
          {"p_value", fmt("%.6g", m.p_value)},
          {"r2_reg", fmt("%.6f", m.r2_regression)},
          {"overprediction", fmt("%.6f", errors.overprediction_fraction)},
          {"abs_err_min", fmt("%.6f", errors.min_abs_error)},
          {"abs_err_max", fmt("%.6f", errors.max_abs_error)},
          {"n_test", std::to_string(parts.test.size())},
          {"fallbacks", std::to_string(pred.fallback_count)},
      },
      format, std::cout);
}

void run_compare(const std::string& model_path, const std::string& input,
                 std::uint64_t seed, double split, ReportFormat format) {
  const RuleBase rb = heatfis::load_model(model_path);
  const Dataset d = heatfis::parse_csv(input);
  const heatfis::SplitResult parts = heatfis::split_train_test(d, split, seed);
  const heatfis::LinearModel mlr = heatfis::fit_mlr(parts.train);
  std::cout << heatfis::compare_report(parts.test, rb, mlr, format);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fuzzy heat-index modeling pipeline"};
  app.require_subcommand(1);

  // synth ------------------------------------------------------------------
  auto* synth = app.add_subcommand("synth", "Generate a synthetic dataset");
  heatfis::GeneratorConfig cfg;
  std::string synth_out;
  std::vector<double> rh_range{cfg.rh_lo, cfg.rh_hi};
  std::vector<double> t_range{cfg.t_lo, cfg.t_hi};
  synth->add_option("--n", cfg.n, "Sample count")->required();
  synth->add_option("--seed", cfg.seed, "Generator seed")->required();
  synth->add_option("--out", synth_out, "Output CSV path")->required();
  synth->add_option("--rh-range", rh_range, "Relative humidity range (%)")
      ->expected(2);
  synth->add_option("--t-range", t_range, "Temperature range (degC)")
      ->expected(2);
  synth->add_option("--noise-std", cfg.noise_std,
                    "Gaussian noise on hi (degC)");
  synth->add_flag("--walk", cfg.walk, "Time-correlated random walk");
  synth->add_flag("--quantize", cfg.quantize,
                  "Round rh and t to integers before deriving hi");
  synth->callback([&] {
    cfg.rh_lo = rh_range[0];
    cfg.rh_hi = rh_range[1];
    cfg.t_lo = t_range[0];
    cfg.t_hi = t_range[1];
    run_synth(cfg, synth_out);
  });

  // clean ------------------------------------------------------------------
  auto* clean = app.add_subcommand("clean", "Drop invalid rows and IQR outliers");
  std::string clean_in;
  std::string clean_out;
  double iqr_k = 1.5;
  bool clean_timestamps = false;
  clean->add_option("--input", clean_in, "Input CSV path")->required();
  clean->add_option("--out", clean_out, "Output CSV path")->required();
  clean->add_option("--iqr-k", iqr_k, "IQR fence multiplier");
  clean->add_flag("--timestamps", clean_timestamps,
                  "Write the 4-column layout with synthetic timestamps");
  clean->callback(
      [&] { run_clean(clean_in, clean_out, iqr_k, clean_timestamps); });

  // stats ------------------------------------------------------------------
  auto* stats = app.add_subcommand("stats", "Descriptive statistics and correlations");
  std::string stats_in;
  std::string stats_format = "text";
  stats->add_option("--input", stats_in, "Input CSV path")->required();
  stats->add_option("--format", stats_format, "Output format")
      ->check(CLI::IsMember({"text", "csv"}));
  stats->callback([&] { run_stats(stats_in, parse_format(stats_format)); });

  // train ------------------------------------------------------------------
  auto* train = app.add_subcommand("train", "Learn a fuzzy rule base");
  std::string train_in;
  std::string train_out;
  std::uint64_t train_seed = 0;
  double train_split = 0.7;
  bool optimize = false;
  double step = 0.05;
  train->add_option("--input", train_in, "Input CSV path")->required();
  train->add_option("--seed", train_seed, "Split seed")->required();
  train->add_option("--out", train_out, "Model output path")->required();
  train->add_option("--split", train_split, "Train fraction");
  train->add_flag("--optimize", optimize, "Tune consequent offsets");
  train->add_option("--step", step, "Offset grid step");
  train->callback([&] {
    run_train(train_in, train_seed, train_split, optimize, step, train_out);
  });

  // rules ------------------------------------------------------------------
  auto* rules = app.add_subcommand("rules", "Print the rule propositions");
  std::string rules_model;
  rules->add_option("--model", rules_model, "Model path")->required();
  rules->callback([&] { run_rules(rules_model); });

  // predict ----------------------------------------------------------------
  auto* predict = app.add_subcommand("predict", "Predict heat index for rh,t pairs");
  std::string predict_model;
  std::string predict_in;
  std::string predict_out;
  predict->add_option("--model", predict_model, "Model path")->required();
  predict->add_option("--input", predict_in, "CSV of rh,t pairs")->required();
  predict->add_option("--out", predict_out, "Output CSV path (default stdout)");
  predict->callback(
      [&] { run_predict(predict_model, predict_in, predict_out); });

  // evaluate ---------------------------------------------------------------
  auto* evaluate = app.add_subcommand("evaluate", "Metrics on the held-out split");
  std::string eval_model;
  std::string eval_in;
  std::uint64_t eval_seed = 0;
  double eval_split = 0.7;
  std::string eval_format = "text";
  evaluate->add_option("--model", eval_model, "Model path")->required();
  evaluate->add_option("--input", eval_in, "Full cleaned CSV path")->required();
  evaluate->add_option("--seed", eval_seed, "Split seed (match train)")
      ->required();
  evaluate->add_option("--split", eval_split, "Train fraction");
  evaluate->add_option("--format", eval_format, "Output format")
      ->check(CLI::IsMember({"text", "csv"}));
  evaluate->callback([&] {
    run_evaluate(eval_model, eval_in, eval_seed, eval_split,
                 parse_format(eval_format));
  });

  // compare ----------------------------------------------------------------
  auto* compare = app.add_subcommand("compare", "Fuzzy model vs linear baseline");
  std::string cmp_model;
  std::string cmp_in;
  std::uint64_t cmp_seed = 0;
  double cmp_split = 0.7;
  std::string cmp_format = "text";
  compare->add_option("--model", cmp_model, "Model path")->required();
  compare->add_option("--input", cmp_in, "Full cleaned CSV path")->required();
  compare->add_option("--seed", cmp_seed, "Split seed (match train)")
      ->required();
  compare->add_option("--split", cmp_split, "Train fraction");
  compare->add_option("--format", cmp_format, "Output format")
      ->check(CLI::IsMember({"text", "csv"}));
  compare->callback([&] {
    run_compare(cmp_model, cmp_in, cmp_seed, cmp_split,
                parse_format(cmp_format));
  });

  try {
    CLI11_PARSE(app, argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "heatfis: error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
