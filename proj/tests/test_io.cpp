#include <doctest.h>

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <unistd.h>

#include "support/fixtures.hpp"
#include "transit/errors.hpp"
#include "transit/geojson.hpp"
#include "transit/io.hpp"
#include "transit/report.hpp"

using namespace transit;

namespace {

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("transit-test-" + std::to_string(::getpid()) + "-" +
            std::to_string(counter_++));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  void write(const std::string& name, const std::string& content) const {
    std::ofstream out(path / name);
    out << content;
  }
  static inline int counter_ = 0;
};

}  // namespace

TEST_CASE("parse_kv_config") {
  SUBCASE("plain listing") {
    const auto kv = parse_kv_config("p-max:1.5\nmax-length:35");
    CHECK(kv.at("p-max") == "1.5");
    CHECK(kv.at("max-length") == "35");
  }
  SUBCASE("whitespace and blank lines tolerated") {
    const auto kv = parse_kv_config("\n  key : value \n\n");
    CHECK(kv.at("key") == "value");
  }
  SUBCASE("missing colon") {
    CHECK_THROWS_AS(parse_kv_config("p-max 1.5"), ConfigError);
  }
  SUBCASE("duplicate key") {
    CHECK_THROWS_AS(parse_kv_config("a:1\na:2"), ConfigError);
  }
}

TEST_CASE("construction config parsing") {
  const std::string baseline =
      "p-max:1.5\n"
      "max-length:35\n"
      "min-length:8.2\n"
      "corridor-height:0.5\n"
      "demand-adjustment-weight:10\n"
      "target-efficiency:150\n";

  SUBCASE("baseline parses") {
    const auto cfg = parse_construction_config(baseline);
    CHECK(cfg.rho_max == 1.5);
    CHECK(cfg.max_length == 35.0);
    CHECK(cfg.min_length == 8.2);
    CHECK(cfg.corridor_height == 0.5);
    CHECK(cfg.demand_adjustment_weight == 10.0);
    CHECK(cfg.target_efficiency == 150.0);
  }
  SUBCASE("empty text is missing keys") {
    CHECK_THROWS_AS(parse_construction_config(""), ConfigError);
  }
  SUBCASE("malformed number") {
    CHECK_THROWS_AS(parse_construction_config(
                        "p-max:abc\nmax-length:35\nmin-length:8.2\n"
                        "corridor-height:0.5\ndemand-adjustment-weight:10\n"
                        "target-efficiency:150\n"),
                    ConfigError);
  }
  SUBCASE("unknown key rejected") {
    CHECK_THROWS_AS(parse_construction_config(baseline + "mystery:1\n"),
                    ConfigError);
  }
  SUBCASE("constraint checks") {
    CHECK_THROWS_AS(parse_construction_config(
                        "p-max:0.9\nmax-length:35\nmin-length:8.2\n"
                        "corridor-height:0.5\ndemand-adjustment-weight:10\n"
                        "target-efficiency:150\n"),
                    ConfigError);
  }
}

TEST_CASE("efficiency config parsing") {
  const std::string baseline =
      "cost-mode:state-average-DC\n"
      "line-regression:log-log\n"
      "regression:log-log\n"
      "transfer-weight:-1\n"
      "station-weight:-0.75\n"
      "distance-weight:1\n"
      "adjustment-weight:1\n";

  SUBCASE("baseline configuration") {
    const auto cfg = parse_efficiency_config(baseline);
    CHECK(cfg.cost_mode == "state-average-DC");
    CHECK(cfg.regression == RegressionScheme::log_log);
    CHECK(cfg.line_regression == RegressionScheme::log_log);
    CHECK(cfg.effective_transfer_weight() == 0.0);   // 1 + (-1)
    CHECK(cfg.effective_station_weight() == 0.25);   // 1 + (-0.75)
    CHECK(cfg.effective_distance_weight() == 2.0);   // 1 + 1
    CHECK(cfg.effective_adjustment_weight() == 2.0);
    CHECK(cfg.efficiency_exponent == 4.0);
    CHECK_FALSE(cfg.unreachable_penalty.has_value());
  }
  SUBCASE("optional switches") {
    const auto cfg = parse_efficiency_config(
        "cost-mode:flat\nline-regression:linear-linear\n"
        "regression:linear-linear\ntransfer-weight:2\nstation-weight:0\n"
        "distance-weight:1\nadjustment-weight:1\n"
        "efficiency-exponent:2\nweight-mode:raw\nunreachable-penalty:1000\n");
    CHECK(cfg.efficiency_exponent == 2.0);
    CHECK(cfg.weight_mode == WeightMode::raw);
    CHECK(cfg.effective_distance_weight() == 1.0);  // raw value as-is
    CHECK(cfg.effective_transfer_weight() == 2.0);
    CHECK(cfg.unreachable_penalty == 1000.0);
  }
  SUBCASE("weights that go negative are rejected") {
    CHECK_THROWS_AS(
        parse_efficiency_config("cost-mode:x\nline-regression:log-log\n"
                                "regression:log-log\ntransfer-weight:-2\n"
                                "station-weight:0\ndistance-weight:0\n"
                                "adjustment-weight:0\n"),
        ConfigError);
  }
  SUBCASE("bad scheme name") {
    CHECK_THROWS_AS(
        parse_efficiency_config("cost-mode:x\nline-regression:quadratic\n"
                                "regression:log-log\ntransfer-weight:0\n"
                                "station-weight:0\ndistance-weight:0\n"
                                "adjustment-weight:0\n"),
        ConfigError);
  }
}

TEST_CASE("cost table parsing") {
  const auto costs = parse_cost_table("state-average-DC:250\nglobal-average:180\n");
  CHECK(costs.at("state-average-DC") == 250.0);
  CHECK(costs.at("global-average") == 180.0);
  CHECK_THROWS_AS(costs.at("missing"), UnknownCostMode);
  CHECK_THROWS_AS(parse_cost_table("mode:-5\n"), ConfigError);
}

TEST_CASE("network and demand loading from CSV") {
  TempDir dir;
  dir.write("stations.csv",
            "id,name,x,y,transfer_eligible\n"
            "a,Alpha,0,0,1\n"
            "b,Beta,3,4,1\n"
            "c,Gamma,6,0,0\n");
  dir.write("edges.csv",
            "station_a,station_b,length\n"
            "a,b,\n"
            "b,c,5.5\n");
  dir.write("lines.csv",
            "line_id,sequence,station_id\n"
            "L1,0,a\n"
            "L1,1,b\n"
            "L1,2,c\n");
  dir.write("demand.csv",
            "origin,destination,demand\n"
            "a,c,12.5\n"
            "c,a,3\n");

  const auto net = load_network(dir.path);
  CHECK(net.coordinate_system() == CoordinateSystem::planar);
  CHECK(net.stations().size() == 3);
  CHECK(net.station("b").name == "Beta");
  CHECK_FALSE(net.station("c").transfer_eligible);
  CHECK(*net.edge_length(make_edge_key("a", "b")) == doctest::Approx(5.0));
  CHECK(*net.edge_length(make_edge_key("b", "c")) == 5.5);  // explicit override
  REQUIRE(net.lines().size() == 1);
  CHECK(net.lines().front().stations() ==
        std::vector<std::string>{"a", "b", "c"});

  const auto demand = load_demand(dir.path / "demand.csv", net);
  CHECK(demand.at("a", "c") == 12.5);
  CHECK(demand.symmetric("a", "c") == 15.5);

  SUBCASE("missing file reads as not found") {
    CHECK_THROWS_WITH_AS(load_demand(dir.path / "nope.csv", net),
                         doctest::Contains("file not found"), CsvError);
  }
  SUBCASE("unknown station in demand") {
    dir.write("bad.csv", "origin,destination,demand\na,zz,1\n");
    CHECK_THROWS_AS(load_demand(dir.path / "bad.csv", net), UnknownStation);
  }
  SUBCASE("line over a missing edge") {
    dir.write("lines.csv",
              "line_id,sequence,station_id\nL1,0,a\nL1,1,c\n");
    CHECK_THROWS_AS(load_network(dir.path), CsvError);
  }
  SUBCASE("bad header") {
    dir.write("stations.csv", "id,label,x,y,transfer_eligible\n");
    CHECK_THROWS_AS(load_network(dir.path), CsvError);
  }
}

TEST_CASE("geographic stations load lat/lon") {
  TempDir dir;
  dir.write("stations.csv",
            "id,name,lat,lon,transfer_eligible\n"
            "w,West,38.9,-77.2,1\n"
            "e,East,38.9,-76.9,1\n");
  dir.write("edges.csv", "station_a,station_b,length\nw,e,\n");
  dir.write("lines.csv", "line_id,sequence,station_id\nL,0,w\nL,1,e\n");
  const auto net = load_network(dir.path);
  CHECK(net.coordinate_system() == CoordinateSystem::geographic);
  CHECK(net.station("w").pos.y == 38.9);   // latitude
  CHECK(net.station("w").pos.x == -77.2);  // longitude
  const double len = *net.edge_length(make_edge_key("e", "w"));
  CHECK(len == doctest::Approx(net.crow_fly("w", "e")));
  CHECK(len > 10.0);  // ~16 miles across DC
  CHECK(len < 25.0);
}

TEST_CASE("geojson export") {
  const auto net = testing::make_network(
      {testing::make_station("a", 0, 0), testing::make_station("b", 3, 4)},
      {{"L1", {"a", "b"}}});
  const auto new_line = *Line::from_edges("new-1", {Edge{"a", "b", 5.0}});

  const auto doc = nlohmann::json::parse(export_geojson(net, new_line));
  CHECK(doc.at("type") == "FeatureCollection");
  CHECK(doc.at("crs_note") == "planar-miles");

  int stations = 0, existing = 0, added = 0;
  for (const auto& f : doc.at("features")) {
    const auto& geom = f.at("geometry");
    if (geom.at("type") == "Point") ++stations;
    if (geom.at("type") == "LineString") {
      const auto role = f.at("properties").at("role").get<std::string>();
      if (role == "existing") ++existing;
      if (role == "new") {
        ++added;
        CHECK(f.at("properties").at("stroke") == "#00FFFF");
      }
    }
  }
  CHECK(stations == 2);
  CHECK(existing == 1);
  CHECK(added == 1);

  SUBCASE("geographic export omits the planar marker and is [lon, lat]") {
    const auto geo = testing::make_network(
        {Station{"g", "G", Position{-77.0, 38.9}, true},
         Station{"h", "H", Position{-76.9, 38.95}, true}},
        {{"L", {"g", "h"}}}, {}, {}, CoordinateSystem::geographic);
    const auto parsed = nlohmann::json::parse(export_geojson(geo, std::nullopt));
    CHECK_FALSE(parsed.contains("crs_note"));
    for (const auto& f : parsed.at("features")) {
      if (f.at("geometry").at("type") == "Point" &&
          f.at("properties").at("id") == "g") {
        CHECK(f.at("geometry").at("coordinates")[0] == -77.0);  // lon first
        CHECK(f.at("geometry").at("coordinates")[1] == 38.9);
      }
    }
  }
}

TEST_CASE("metrics block format") {
  RunReport report;
  report.runtime_minutes = 15.7;  // prints truncated
  report.old_efficiency = 217.37074433876535;
  report.new_efficiency = 216.57277364458218;
  report.improvement = report.new_efficiency - report.old_efficiency;
  report.percentage_improvement =
      report.improvement / report.old_efficiency * 100.0;

  const std::string block = format_metrics_block(report);
  CHECK(block ==
        "Total algorithm runtime in minutes: 15\n"
        "Old network efficiency: 217.37074433876535\n"
        "New network efficiency: 216.57277364458218\n"
        "Improvement: -0.7979706941831637\n"
        "Percentage improvement: -0.3671012383062699%\n");

  const std::string rows = format_line_rows({"eastern market", "union station",
                                             "judiciary square"});
  CHECK(rows ==
        "eastern market -> union station\n"
        "union station -> judiciary square\n");
}
