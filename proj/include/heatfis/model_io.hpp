#pragma once

#include <cmath>
#include <fstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "heatfis/rules.hpp"

namespace heatfis {

// Model files are versioned JSON so a rule base can be inspected by eye
// and reloaded bit-for-bit (doubles serialize with shortest round-trip
// representation).
inline constexpr const char* kModelFormatName = "heatfis-model";
inline constexpr int kModelFormatVersion = 1;

namespace detail {

using ordered_json = nlohmann::ordered_json;

inline ordered_json mf_to_json(const TriangularMf& mf) {
  return ordered_json{mf.a, mf.b, mf.c};
}

inline ordered_json partition_to_json(const Partition& p) {
  ordered_json j;
  j["universe"] = ordered_json{p.universe.lo, p.universe.hi};
  j["low"] = mf_to_json(p.low);
  j["mid"] = mf_to_json(p.mid);
  j["high"] = mf_to_json(p.high);
  return j;
}

inline TriangularMf mf_from_json(const ordered_json& j) {
  if (!j.is_array() || j.size() != 3) {
    throw std::runtime_error("model file: malformed membership function");
  }
  const TriangularMf mf{j[0].get<double>(), j[1].get<double>(),
                        j[2].get<double>()};
  if (!(mf.a <= mf.b && mf.b <= mf.c) || (mf.a == mf.b && mf.b == mf.c)) {
    throw std::runtime_error("model file: invalid membership function");
  }
  return mf;
}

inline Partition partition_from_json(const ordered_json& j) {
  const auto& u = j.at("universe");
  if (!u.is_array() || u.size() != 2) {
    throw std::runtime_error("model file: malformed universe");
  }
  const double lo = u[0].get<double>();
  const double hi = u[1].get<double>();
  if (!(lo < hi)) {
    throw std::runtime_error("model file: degenerate universe");
  }
  return Partition{mf_from_json(j.at("low")), mf_from_json(j.at("mid")),
                   mf_from_json(j.at("high")), Universe(lo, hi)};
}

}  // namespace detail

inline void save_model(const RuleBase& rb, std::ostream& out) {
  detail::ordered_json j;
  j["format"] = kModelFormatName;
  j["version"] = kModelFormatVersion;
  j["partitions"]["rh"] = detail::partition_to_json(rb.rh);
  j["partitions"]["t"] = detail::partition_to_json(rb.t);
  j["partitions"]["hi"] = detail::partition_to_json(rb.hi);
  j["centers"]["base"] = rb.centers.base;
  j["centers"]["offset"] = rb.centers.offset;
  auto& rules = j["rules"] = detail::ordered_json::array();
  for (const FuzzyRule& r : rb.rules) {
    detail::ordered_json jr;
    jr["rh"] = to_string(r.rh);
    jr["t"] = to_string(r.t);
    jr["hi"] = to_string(r.hi);
    jr["degree"] = r.degree;
    rules.push_back(jr);
  }
  out << j.dump(2) << '\n';
}

inline void save_model(const RuleBase& rb, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot open '" + path + "' for writing");
  }
  save_model(rb, out);
  if (!out.good()) {
    throw std::runtime_error("write to '" + path + "' failed");
  }
}

inline RuleBase load_model(std::istream& in) {
  detail::ordered_json j;
  try {
    j = detail::ordered_json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("model file is not valid JSON: ") +
                             e.what());
  }
  try {
    if (j.value("format", "") != kModelFormatName) {
      throw std::runtime_error("model file: unrecognized format tag");
    }
    if (!j.contains("version") || !j["version"].is_number_integer() ||
        j["version"].get<int>() != kModelFormatVersion) {
      throw std::runtime_error("model file: unsupported version (expected " +
                               std::to_string(kModelFormatVersion) + ")");
    }
    RuleBase rb{detail::partition_from_json(j.at("partitions").at("rh")),
                detail::partition_from_json(j.at("partitions").at("t")),
                detail::partition_from_json(j.at("partitions").at("hi")),
                ConsequentCenters{},
                {}};
    rb.centers.base = j.at("centers").at("base").get<std::array<double, 3>>();
    rb.centers.offset =
        j.at("centers").at("offset").get<std::array<double, 3>>();
    for (double off : rb.centers.offset) {
      if (!(off >= -1.0 && off <= 1.0)) {
        throw std::runtime_error("model file: offset outside [-1, 1]");
      }
    }
    const auto& rules = j.at("rules");
    if (!rules.is_array() || rules.empty() || rules.size() > 9) {
      throw std::runtime_error("model file: rule list must hold 1 to 9 rules");
    }
    for (const auto& jr : rules) {
      FuzzyRule r;
      const auto rh = region_from_string(jr.at("rh").get<std::string>());
      const auto t = region_from_string(jr.at("t").get<std::string>());
      const auto hi = region_from_string(jr.at("hi").get<std::string>());
      if (!rh || !t || !hi) {
        throw std::runtime_error("model file: unknown region label");
      }
      r.rh = *rh;
      r.t = *t;
      r.hi = *hi;
      r.degree = jr.at("degree").get<double>();
      if (!(r.degree > 0.0 && r.degree <= 1.0)) {
        throw std::runtime_error("model file: rule degree outside (0, 1]");
      }
      if (rb.find(r.rh, r.t) != nullptr) {
        throw std::runtime_error("model file: duplicate rule antecedent");
      }
      rb.rules.push_back(r);
    }
    return rb;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("model file: missing or mistyped field: ") +
                             e.what());
  }
}

inline RuleBase load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open '" + path + "' for reading");
  }
  return load_model(in);
}

}  // namespace heatfis
