#include "transit/evaluation.hpp"

#include <cmath>
#include <map>

#include "transit/errors.hpp"

namespace transit {

namespace {

double apply_transform(bool logarithmic, double value, const char* what) {
  if (!logarithmic) return value;
  if (value <= 0.0) {
    throw NonPositiveLogOperand(std::string(what) +
                                " must be > 0 under a log scheme");
  }
  return std::log(value);
}

double combine(RegressionScheme scheme, double cost_sum, double total_eff) {
  const bool log_cost = scheme == RegressionScheme::log_linear ||
                        scheme == RegressionScheme::log_log;
  const bool log_eff = scheme == RegressionScheme::linear_log ||
                       scheme == RegressionScheme::log_log;
  return apply_transform(log_cost, cost_sum, "construction cost") *
         apply_transform(log_eff, total_eff, "total efficiency");
}

}  // namespace

double construction_cost(const Line& r, const CostTable& costs,
                         const std::string& mode) {
  return costs.at(mode) * r.length();
}

double path_complexity(const Path& p, const EfficiencyConfig& cfg) {
  if (p.station_count() < 2) {
    throw DegeneratePath("path " + p.origin + " -> " + p.destination +
                         " has fewer than two stations");
  }
  return p.transfers * cfg.effective_transfer_weight() +
         (p.station_count() - 2) * cfg.effective_station_weight() +
         p.distance * cfg.effective_distance_weight();
}

double path_efficiency(const Path& p, double l_star,
                       const EfficiencyConfig& cfg) {
  if (l_star <= 0.0) {
    throw DegenerateGeometry("non-positive crow-fly distance for " + p.origin +
                             " -> " + p.destination);
  }
  const double ratio =
      path_complexity(p, cfg) / (l_star * cfg.effective_adjustment_weight());
  return std::pow(ratio, cfg.efficiency_exponent);
}

double total_efficiency(const Network& net, const std::vector<Line>& extra_lines,
                        const DemandMatrix& demand, const EfficiencyConfig& cfg,
                        PathStrategy strategy) {
  const PathContext ctx(net, extra_lines);
  // Paths and efficiencies are direction-symmetric, so cache per unordered
  // pair while still summing ordered entries.
  std::map<EdgeKey, double> cache;
  double total = 0.0;
  for (const auto& [pair, d] : demand.entries()) {
    if (d <= 0.0) continue;
    const auto key = make_edge_key(pair.first, pair.second);
    auto it = cache.find(key);
    if (it == cache.end()) {
      const auto path = ctx.best_path(pair.first, pair.second, strategy);
      double efficiency;
      if (path) {
        efficiency =
            path_efficiency(*path, net.crow_fly(pair.first, pair.second), cfg);
      } else if (cfg.unreachable_penalty) {
        efficiency = *cfg.unreachable_penalty;
      } else {
        throw UnreachablePair(pair.first, pair.second);
      }
      it = cache.emplace(key, efficiency).first;
    }
    total += it->second * d;
  }
  return total;
}

double network_efficiency(const Network& net, const std::vector<Line>& extra_lines,
                          const DemandMatrix& demand, const EfficiencyConfig& cfg,
                          const CostTable& costs, PathStrategy strategy) {
  double cost_sum = 0.0;
  for (const Line& line : net.lines()) {
    cost_sum += construction_cost(line, costs, cfg.cost_mode);
  }
  for (const Line& line : extra_lines) {
    cost_sum += construction_cost(line, costs, cfg.cost_mode);
  }
  const double total = total_efficiency(net, extra_lines, demand, cfg, strategy);
  return combine(cfg.regression, cost_sum, total);
}

double line_efficiency(const Line& r, const Network& net,
                       const DemandMatrix& demand, const EfficiencyConfig& cfg,
                       const CostTable& costs) {
  if (r.empty()) throw TransitError("line_efficiency: empty line");

  std::vector<Station> stations;
  stations.reserve(r.stations().size());
  for (const std::string& id : r.stations()) {
    stations.push_back(net.station(id));
  }
  std::vector<Edge> edges;
  edges.reserve(r.edges().size());
  for (const auto& [key, len] : r.edges()) {
    edges.push_back(Edge{key.first, key.second, len});
  }
  const Network isolated = Network::create(
      std::move(stations), std::move(edges), {r}, net.coordinate_system());

  DemandMatrix::Entries restricted;
  for (const auto& [pair, d] : demand.entries()) {
    if (d > 0.0 && r.contains_station(pair.first) &&
        r.contains_station(pair.second)) {
      restricted.emplace(pair, d);
    }
  }

  EfficiencyConfig line_cfg = cfg;
  line_cfg.regression = cfg.line_regression;
  return network_efficiency(isolated, {}, DemandMatrix::create(std::move(restricted)),
                            line_cfg, costs, PathStrategy::shortest_distance);
}

}  // namespace transit
