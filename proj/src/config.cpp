#include "transit/config.hpp"

#include <charconv>
#include <set>
#include <sstream>

#include "transit/errors.hpp"

namespace transit {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size()) {
    throw ConfigError("malformed value for key '" + key + "': " + value);
  }
  return out;
}

// Pulls a required key out of the map, erasing it so leftovers can be
// reported as unknown.
std::string take_required(std::map<std::string, std::string>& kv,
                          const std::string& key) {
  const auto it = kv.find(key);
  if (it == kv.end()) throw ConfigError("missing required key: " + key);
  std::string value = it->second;
  kv.erase(it);
  return value;
}

std::optional<std::string> take_optional(std::map<std::string, std::string>& kv,
                                         const std::string& key) {
  const auto it = kv.find(key);
  if (it == kv.end()) return std::nullopt;
  std::string value = it->second;
  kv.erase(it);
  return value;
}

void reject_leftovers(const std::map<std::string, std::string>& kv,
                      const std::string& what) {
  if (!kv.empty()) {
    throw ConfigError("unknown key in " + what + ": " + kv.begin()->first);
  }
}

}  // namespace

RegressionScheme parse_regression_scheme(const std::string& name) {
  if (name == "linear-linear") return RegressionScheme::linear_linear;
  if (name == "linear-log") return RegressionScheme::linear_log;
  if (name == "log-linear") return RegressionScheme::log_linear;
  if (name == "log-log") return RegressionScheme::log_log;
  throw ConfigError("unknown regression scheme: " + name);
}

std::string to_string(RegressionScheme scheme) {
  switch (scheme) {
    case RegressionScheme::linear_linear: return "linear-linear";
    case RegressionScheme::linear_log: return "linear-log";
    case RegressionScheme::log_linear: return "log-linear";
    case RegressionScheme::log_log: return "log-log";
  }
  return "log-log";
}

void EfficiencyConfig::validate() const {
  if (effective_transfer_weight() < 0.0 || effective_station_weight() < 0.0 ||
      effective_distance_weight() < 0.0) {
    throw ConfigError("effective complexity weights must be >= 0");
  }
  if (effective_adjustment_weight() <= 0.0) {
    throw ConfigError("effective adjustment weight must be > 0");
  }
  if (cost_mode.empty()) {
    throw ConfigError("cost-mode must be set");
  }
}

void LineConstructionConfig::validate() const {
  if (rho_max <= 1.0) throw ConfigError("p-max must be > 1");
  if (min_length <= 0.0) throw ConfigError("min-length must be > 0");
  if (min_length > max_length) {
    throw ConfigError("min-length must not exceed max-length");
  }
  if (corridor_height <= 0.0) throw ConfigError("corridor-height must be > 0");
  if (demand_adjustment_weight < 0.0) {
    throw ConfigError("demand-adjustment-weight must be >= 0");
  }
}

double CostTable::at(const std::string& mode) const {
  const auto it = per_mile.find(mode);
  if (it == per_mile.end()) throw UnknownCostMode(mode);
  return it->second;
}

std::map<std::string, std::string> parse_kv_config(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty()) continue;
    const auto colon = line.find(':');
    if (colon == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no) + " has no ':': " + line);
    }
    const std::string key = trim(line.substr(0, colon));
    const std::string value = trim(line.substr(colon + 1));
    if (key.empty() || value.empty()) {
      throw ConfigError("line " + std::to_string(line_no) + " is malformed: " + line);
    }
    if (!kv.emplace(key, value).second) {
      throw ConfigError("duplicate key: " + key);
    }
  }
  return kv;
}

LineConstructionConfig parse_construction_config(const std::string& text) {
  auto kv = parse_kv_config(text);
  LineConstructionConfig cfg;
  cfg.rho_max = parse_double("p-max", take_required(kv, "p-max"));
  cfg.max_length = parse_double("max-length", take_required(kv, "max-length"));
  cfg.min_length = parse_double("min-length", take_required(kv, "min-length"));
  cfg.corridor_height =
      parse_double("corridor-height", take_required(kv, "corridor-height"));
  cfg.demand_adjustment_weight = parse_double(
      "demand-adjustment-weight", take_required(kv, "demand-adjustment-weight"));
  cfg.target_efficiency =
      parse_double("target-efficiency", take_required(kv, "target-efficiency"));
  reject_leftovers(kv, "line construction config");
  cfg.validate();
  return cfg;
}

EfficiencyConfig parse_efficiency_config(const std::string& text) {
  auto kv = parse_kv_config(text);
  EfficiencyConfig cfg;
  cfg.cost_mode = take_required(kv, "cost-mode");
  cfg.line_regression =
      parse_regression_scheme(take_required(kv, "line-regression"));
  cfg.regression = parse_regression_scheme(take_required(kv, "regression"));
  cfg.transfer_weight =
      parse_double("transfer-weight", take_required(kv, "transfer-weight"));
  cfg.station_weight =
      parse_double("station-weight", take_required(kv, "station-weight"));
  cfg.distance_weight =
      parse_double("distance-weight", take_required(kv, "distance-weight"));
  cfg.adjustment_weight =
      parse_double("adjustment-weight", take_required(kv, "adjustment-weight"));
  if (const auto v = take_optional(kv, "efficiency-exponent")) {
    cfg.efficiency_exponent = parse_double("efficiency-exponent", *v);
  }
  if (const auto v = take_optional(kv, "weight-mode")) {
    if (*v == "adjustment") {
      cfg.weight_mode = WeightMode::adjustment;
    } else if (*v == "raw") {
      cfg.weight_mode = WeightMode::raw;
    } else {
      throw ConfigError("weight-mode must be 'adjustment' or 'raw', got: " + *v);
    }
  }
  if (const auto v = take_optional(kv, "unreachable-penalty")) {
    cfg.unreachable_penalty = parse_double("unreachable-penalty", *v);
  }
  reject_leftovers(kv, "efficiency config");
  cfg.validate();
  return cfg;
}

CostTable parse_cost_table(const std::string& text) {
  CostTable table;
  for (const auto& [mode, value] : parse_kv_config(text)) {
    const double cost = parse_double(mode, value);
    if (cost <= 0.0) {
      throw ConfigError("cost per mile must be > 0 for mode: " + mode);
    }
    table.per_mile.emplace(mode, cost);
  }
  return table;
}

}  // namespace transit
