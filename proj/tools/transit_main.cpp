#include <CLI11.hpp>
#include <fmt/core.h>

#include <chrono>
#include <fstream>
#include <optional>
#include <string>

#include "transit/errors.hpp"
#include "transit/evaluation.hpp"
#include "transit/geojson.hpp"
#include "transit/io.hpp"
#include "transit/line_addition.hpp"
#include "transit/report.hpp"

namespace {

transit::PathStrategy parse_strategy(const std::string& name) {
  if (name == "shortest") return transit::PathStrategy::shortest_distance;
  if (name == "min-transfer") return transit::PathStrategy::transfer_minimizing;
  throw transit::ConfigError("strategy must be 'shortest' or 'min-transfer'");
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw transit::TransitError("cannot write " + path);
  out << content;
  if (!out) throw transit::TransitError("failed writing " + path);
}

int cmd_add_line(const std::string& network_dir, const std::string& demand_file,
                 const std::string& construction_file,
                 const std::string& efficiency_file, const std::string& costs_file,
                 const std::string& strategy_name, const std::string& map_file) {
  const auto net = transit::load_network(network_dir);
  const auto demand = transit::load_demand(demand_file, net);
  const auto lcfg = transit::load_construction_config(construction_file);
  const auto ecfg = transit::load_efficiency_config(efficiency_file);
  const auto costs = transit::load_costs(costs_file);
  const auto strategy = parse_strategy(strategy_name);

  const auto start = std::chrono::steady_clock::now();
  const transit::RunResult result =
      transit::line_addition(net, demand, ecfg, lcfg, costs, strategy);
  const std::chrono::duration<double> elapsed =
      std::chrono::steady_clock::now() - start;

  transit::RunReport report;
  report.runtime_minutes = elapsed.count() / 60.0;
  report.old_efficiency = result.old_efficiency;
  report.new_efficiency = result.new_efficiency;
  report.improvement = result.improvement;
  report.percentage_improvement = result.percentage_improvement;
  for (const std::string& id : result.line.stations()) {
    report.line_stations.push_back(net.station(id).name);
  }

  fmt::print("Line:\n{}\nMetrics:\n{}", transit::format_line_rows(report.line_stations),
             transit::format_metrics_block(report));
  fmt::print(stderr, "Runtime seconds: {}\n", elapsed.count());

  if (!map_file.empty()) {
    write_file(map_file, transit::export_geojson(net, result.line));
  }
  return 0;
}

int cmd_evaluate(const std::string& network_dir, const std::string& demand_file,
                 const std::string& efficiency_file, const std::string& costs_file,
                 const std::string& strategy_name) {
  const auto net = transit::load_network(network_dir);
  const auto demand = transit::load_demand(demand_file, net);
  const auto ecfg = transit::load_efficiency_config(efficiency_file);
  const auto costs = transit::load_costs(costs_file);
  const auto strategy = parse_strategy(strategy_name);

  double cost_sum = 0.0;
  for (const auto& line : net.lines()) {
    cost_sum += transit::construction_cost(line, costs, ecfg.cost_mode);
  }
  const double total =
      transit::total_efficiency(net, {}, demand, ecfg, strategy);
  const double network =
      transit::network_efficiency(net, {}, demand, ecfg, costs, strategy);
  fmt::print("Network efficiency: {}\n", network);
  fmt::print("Total efficiency: {}\n", total);
  fmt::print("Total construction cost: {}\n", cost_sum);
  return 0;
}

int cmd_path(const std::string& network_dir, const std::string& origin,
             const std::string& destination, const std::string& strategy_name,
             const std::string& efficiency_file) {
  const auto net = transit::load_network(network_dir);
  const auto strategy = parse_strategy(strategy_name);
  transit::EfficiencyConfig ecfg;  // all adjustments zero unless a file is given
  ecfg.cost_mode = "unused";
  if (!efficiency_file.empty()) {
    ecfg = transit::load_efficiency_config(efficiency_file);
  }

  const auto path = transit::best_path(net, {}, origin, destination, strategy);
  if (!path) {
    fmt::print(stderr, "no path between {} and {}\n", origin, destination);
    return 1;
  }
  for (std::size_t i = 0; i < path->edges.size(); ++i) {
    fmt::print("{} -> {}  [{}]\n", path->stations[i], path->stations[i + 1],
               path->segment_lines[i]);
  }
  fmt::print("Distance: {}\n", path->distance);
  fmt::print("Transfers: {}\n", path->transfers);
  if (origin != destination) {
    const double complexity = transit::path_complexity(*path, ecfg);
    fmt::print("Complexity: {}\n", complexity);
    fmt::print("Efficiency: {}\n",
               transit::path_efficiency(*path, net.crow_fly(origin, destination),
                                        ecfg));
  }
  return 0;
}

int cmd_export_map(const std::string& network_dir, const std::string& out_file) {
  const auto net = transit::load_network(network_dir);
  write_file(out_file, transit::export_geojson(net, std::nullopt));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Transit line addition planner"};
  app.require_subcommand(1);

  std::string network_dir, demand_file, construction_file, efficiency_file,
      costs_file, map_file, origin, destination, out_file;
  std::string strategy = "shortest";

  auto* add = app.add_subcommand("add-line",
                                 "Generate one new line and report metrics");
  add->add_option("--network", network_dir, "Directory with the network CSVs")
      ->required();
  add->add_option("--demand", demand_file, "Origin-destination demand CSV")
      ->required();
  add->add_option("--construction-config", construction_file,
                  "Line construction parameters")
      ->required();
  add->add_option("--efficiency-config", efficiency_file,
                  "Efficiency evaluation parameters")
      ->required();
  add->add_option("--costs", costs_file, "Cost table file")->required();
  add->add_option("--strategy", strategy, "shortest | min-transfer");
  add->add_option("--out-map", map_file, "Write a GeoJSON map here");

  auto* eval = app.add_subcommand("evaluate", "Report network efficiency");
  eval->add_option("--network", network_dir)->required();
  eval->add_option("--demand", demand_file)->required();
  eval->add_option("--efficiency-config", efficiency_file)->required();
  eval->add_option("--costs", costs_file)->required();
  eval->add_option("--strategy", strategy);

  auto* path = app.add_subcommand("path", "Show the best path between stations");
  path->add_option("--network", network_dir)->required();
  path->add_option("--from", origin)->required();
  path->add_option("--to", destination)->required();
  path->add_option("--strategy", strategy);
  path->add_option("--efficiency-config", efficiency_file);

  auto* exp = app.add_subcommand("export-map", "Write the network as GeoJSON");
  exp->add_option("--network", network_dir)->required();
  exp->add_option("--out", out_file)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (add->parsed()) {
      return cmd_add_line(network_dir, demand_file, construction_file,
                          efficiency_file, costs_file, strategy, map_file);
    }
    if (eval->parsed()) {
      return cmd_evaluate(network_dir, demand_file, efficiency_file, costs_file,
                          strategy);
    }
    if (path->parsed()) {
      return cmd_path(network_dir, origin, destination, strategy,
                      efficiency_file);
    }
    if (exp->parsed()) {
      return cmd_export_map(network_dir, out_file);
    }
  } catch (const transit::TransitError& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 1;
  }
  return 0;
}
