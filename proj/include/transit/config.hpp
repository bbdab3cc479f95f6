#pragma once

#include <map>
#include <optional>
#include <string>

namespace transit {

// Regression scheme names read (cost transform, efficiency transform),
// linear = identity and log = natural log.
enum class RegressionScheme { linear_linear, linear_log, log_linear, log_log };

RegressionScheme parse_regression_scheme(const std::string& name);
std::string to_string(RegressionScheme scheme);

// How configured weight values map to effective weights: `adjustment` adds
// the value to a baseline of 1.0, `raw` uses the value as-is.
enum class WeightMode { adjustment, raw };

struct EfficiencyConfig {
  // Raw configured values; see weight_mode for their interpretation.
  double transfer_weight = 0.0;
  double station_weight = 0.0;
  double distance_weight = 0.0;
  double adjustment_weight = 0.0;

  double efficiency_exponent = 4.0;
  std::string cost_mode;
  RegressionScheme regression = RegressionScheme::log_log;
  RegressionScheme line_regression = RegressionScheme::log_log;
  WeightMode weight_mode = WeightMode::adjustment;

  // When set, an unreachable demand pair contributes this fixed per-traveler
  // efficiency instead of raising UnreachablePair.
  std::optional<double> unreachable_penalty;

  double effective(double raw) const {
    return weight_mode == WeightMode::adjustment ? 1.0 + raw : raw;
  }
  double effective_transfer_weight() const { return effective(transfer_weight); }
  double effective_station_weight() const { return effective(station_weight); }
  double effective_distance_weight() const { return effective(distance_weight); }
  double effective_adjustment_weight() const { return effective(adjustment_weight); }

  // Throws ConfigError unless every effective weight is >= 0 and the
  // adjustment weight (a divisor) is > 0.
  void validate() const;
};

struct LineConstructionConfig {
  double rho_max = 0.0;                  // > 1
  double max_length = 0.0;               // miles
  double min_length = 0.0;               // 0 < min <= max
  double corridor_height = 0.0;          // short/long rhombus diagonal ratio, > 0
  double demand_adjustment_weight = 0.0; // >= 0
  double target_efficiency = 0.0;

  void validate() const;
};

// Dollars-per-mile construction cost constants keyed by mode name.
struct CostTable {
  std::map<std::string, double> per_mile;

  double at(const std::string& mode) const;  // throws UnknownCostMode
};

// Parses `key:value` lines. Blank lines are ignored; whitespace around the
// colon is tolerated. Throws ConfigError for lines without a colon, empty
// keys/values, or duplicate keys.
std::map<std::string, std::string> parse_kv_config(const std::string& text);

// Typed loaders over parse_kv_config output. The standard keys are required
// and unknown keys are an error.
LineConstructionConfig parse_construction_config(const std::string& text);
EfficiencyConfig parse_efficiency_config(const std::string& text);
CostTable parse_cost_table(const std::string& text);

}  // namespace transit
