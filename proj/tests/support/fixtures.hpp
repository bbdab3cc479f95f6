#pragma once

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "transit/config.hpp"
#include "transit/network.hpp"

namespace transit::testing {

inline Station make_station(std::string id, double x, double y,
                            bool transfer_eligible = true) {
  return Station{id, id, Position{x, y}, transfer_eligible};
}

// Builds a planar network from per-line station sequences. Edge lengths are
// crow-fly unless overridden; extra_edges adds edges outside any line.
inline Network make_network(
    std::vector<Station> stations,
    const std::vector<std::pair<std::string, std::vector<std::string>>>& lines,
    const std::map<EdgeKey, double>& length_overrides = {},
    const std::vector<Edge>& extra_edges = {},
    CoordinateSystem system = CoordinateSystem::planar) {
  std::map<std::string, Position> pos;
  for (const auto& s : stations) pos[s.id] = s.pos;

  const auto edge_between = [&](const std::string& a, const std::string& b) {
    const EdgeKey key = make_edge_key(a, b);
    const auto it = length_overrides.find(key);
    const double len = it != length_overrides.end()
                           ? it->second
                           : crow_fly_distance(pos.at(a), pos.at(b), system);
    return Edge{key.first, key.second, len};
  };

  std::map<EdgeKey, Edge> edge_set;
  std::vector<Line> line_objects;
  for (const auto& [id, seq] : lines) {
    std::vector<Edge> member;
    for (std::size_t i = 1; i < seq.size(); ++i) {
      Edge e = edge_between(seq[i - 1], seq[i]);
      edge_set.emplace(e.key(), e);
      member.push_back(e);
    }
    line_objects.push_back(*Line::from_edges(id, member));
  }
  for (const Edge& e : extra_edges) edge_set.emplace(e.key(), e);

  std::vector<Edge> edges;
  for (const auto& [key, e] : edge_set) edges.push_back(e);
  return Network::create(std::move(stations), std::move(edges),
                         std::move(line_objects), system);
}

inline DemandMatrix make_demand(
    const std::vector<std::tuple<std::string, std::string, double>>& rows) {
  DemandMatrix::Entries entries;
  for (const auto& [o, d, v] : rows) entries[{o, d}] = v;
  return DemandMatrix::create(std::move(entries));
}

inline EfficiencyConfig make_efficiency_config(
    RegressionScheme scheme = RegressionScheme::linear_linear,
    double exponent = 4.0) {
  EfficiencyConfig cfg;
  cfg.cost_mode = "flat";
  cfg.regression = scheme;
  cfg.line_regression = scheme;
  cfg.efficiency_exponent = exponent;
  return cfg;  // adjustments all zero -> effective weights 1
}

inline LineConstructionConfig make_construction_config(
    double rho_max = 1.5, double max_length = 35.0, double min_length = 1.0,
    double corridor_height = 0.5, double w = 10.0, double target = 1e-9) {
  LineConstructionConfig cfg;
  cfg.rho_max = rho_max;
  cfg.max_length = max_length;
  cfg.min_length = min_length;
  cfg.corridor_height = corridor_height;
  cfg.demand_adjustment_weight = w;
  cfg.target_efficiency = target;
  return cfg;
}

inline CostTable make_costs(double per_mile, const std::string& mode = "flat") {
  CostTable costs;
  costs.per_mile[mode] = per_mile;
  return costs;
}

}  // namespace transit::testing
