#pragma once

#include <vector>

#include "transit/config.hpp"
#include "transit/network.hpp"
#include "transit/path.hpp"

namespace transit {

// cost(r) = dollars-per-mile constant for `mode` times the line length.
double construction_cost(const Line& r, const CostTable& costs,
                         const std::string& mode);

// transfers * W_t + (stations - 2) * W_s + distance * W_d, with effective
// weights from cfg. Throws DegeneratePath when the path has < 2 stations.
double path_complexity(const Path& p, const EfficiencyConfig& cfg);

// (complexity / (l_star * W_a)) ^ exponent. Higher means worse. Throws
// DegenerateGeometry when l_star <= 0.
double path_efficiency(const Path& p, double l_star, const EfficiencyConfig& cfg);

// Demand-weighted sum of path efficiencies over all ordered station pairs
// with positive demand. Unreachable pairs raise UnreachablePair unless
// cfg.unreachable_penalty substitutes a fixed per-traveler efficiency.
double total_efficiency(const Network& net, const std::vector<Line>& extra_lines,
                        const DemandMatrix& demand, const EfficiencyConfig& cfg,
                        PathStrategy strategy);

// f(total construction cost of all lines) * g(total efficiency), where the
// scheme name gives the transforms in (cost, efficiency) order. Lower is
// better. Throws NonPositiveLogOperand when a log operand is <= 0.
double network_efficiency(const Network& net, const std::vector<Line>& extra_lines,
                          const DemandMatrix& demand, const EfficiencyConfig& cfg,
                          const CostTable& costs, PathStrategy strategy);

// Network efficiency of the line viewed as an isolated network: only its
// stations and edges, demand restricted to on-line pairs, and the
// line-regression scheme.
double line_efficiency(const Line& r, const Network& net,
                       const DemandMatrix& demand, const EfficiencyConfig& cfg,
                       const CostTable& costs);

}  // namespace transit
