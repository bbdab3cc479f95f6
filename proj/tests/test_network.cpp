#include <doctest.h>

#include <cmath>
#include <random>

#include "support/fixtures.hpp"
#include "transit/errors.hpp"
#include "transit/network.hpp"

using namespace transit;
using testing::make_construction_config;
using testing::make_network;
using testing::make_station;

namespace {

Edge edge(const std::string& a, const std::string& b, double len) {
  const EdgeKey key = make_edge_key(a, b);
  return Edge{key.first, key.second, len};
}

}  // namespace

TEST_CASE("line construction and canonical ordering") {
  const auto line = Line::from_edges("r", {edge("b", "c", 1), edge("a", "b", 1)});
  REQUIRE(line.has_value());
  CHECK(line->stations() == std::vector<std::string>{"a", "b", "c"});
  CHECK(line->length() == 2.0);

  SUBCASE("branch rejected") {
    CHECK_FALSE(Line::from_edges(
        "r", {edge("a", "b", 1), edge("b", "c", 1), edge("b", "d", 1)}));
  }
  SUBCASE("cycle rejected") {
    CHECK_FALSE(Line::from_edges(
        "r", {edge("a", "b", 1), edge("b", "c", 1), edge("a", "c", 1)}));
  }
  SUBCASE("disconnected rejected") {
    CHECK_FALSE(Line::from_edges("r", {edge("a", "b", 1), edge("c", "d", 1)}));
  }
  SUBCASE("empty line allowed") {
    const auto empty = Line::from_edges("r", {});
    REQUIRE(empty.has_value());
    CHECK(empty->length() == 0.0);
    CHECK(empty->stations().empty());
  }
  SUBCASE("self loop rejected") {
    CHECK_FALSE(Line::from_edges("r", {edge("a", "a", 1)}));
  }
}

TEST_CASE("line length sums member edges") {
  CHECK(Line::from_edges("r", {edge("a", "b", 2.5)})->length() == 2.5);
  CHECK(Line::from_edges("r", {edge("a", "b", 1.0), edge("b", "c", 2.0)})->length() ==
        3.0);
}

TEST_CASE("line union") {
  const auto ab = *Line::from_edges("ab", {edge("a", "b", 1)});
  const auto bc = *Line::from_edges("bc", {edge("b", "c", 1)});
  const auto abc =
      *Line::from_edges("abc", {edge("a", "b", 1), edge("b", "c", 1)});
  const auto bcd =
      *Line::from_edges("bcd", {edge("b", "c", 1), edge("c", "d", 1)});
  const auto cd = *Line::from_edges("cd", {edge("c", "d", 1)});

  SUBCASE("disjoint chain") {
    const auto u = line_union(ab, bc);
    REQUIRE(u.has_value());
    CHECK(u->stations() == std::vector<std::string>{"a", "b", "c"});
  }
  SUBCASE("overlapping chain") {
    const auto u = line_union(abc, bcd);
    REQUIRE(u.has_value());
    CHECK(u->edges().size() == 3);
  }
  SUBCASE("disconnected union fails") { CHECK_FALSE(line_union(ab, cd)); }
  SUBCASE("commutative and associative on chains") {
    const auto left = line_union(*line_union(ab, bc), cd);
    const auto right = line_union(ab, *line_union(bc, cd));
    REQUIRE(left.has_value());
    REQUIRE(right.has_value());
    CHECK(*left == *right);
    CHECK(*line_union(bc, ab) == *line_union(ab, bc));
  }
}

TEST_CASE("subset relation") {
  const auto ab = *Line::from_edges("ab", {edge("a", "b", 1)});
  const auto abc =
      *Line::from_edges("abc", {edge("a", "b", 1), edge("b", "c", 1)});
  CHECK(is_subset_line(ab, abc));
  CHECK_FALSE(is_subset_line(abc, ab));
  CHECK(is_subset_line(abc, abc));
  // mutual subset means equal edge sets
  const auto abc2 =
      *Line::from_edges("other", {edge("b", "c", 1), edge("a", "b", 1)});
  CHECK(is_subset_line(abc, abc2));
  CHECK(is_subset_line(abc2, abc));
  CHECK(abc == abc2);
}

TEST_CASE("circuity factor") {
  const auto net = make_network(
      {make_station("a", 0, 0), make_station("b", 1, 0), make_station("c", 2, 0)},
      {{"L", {"a", "b", "c"}}});
  const auto& line = net.lines().front();
  const auto& a = net.station("a");
  const auto& b = net.station("b");
  const auto& c = net.station("c");

  CHECK(circuity_factor(line, a, c, CoordinateSystem::planar) ==
        doctest::Approx(1.0));
  CHECK(circuity_factor(line, a, b, CoordinateSystem::planar) ==
        doctest::Approx(1.0));

  const auto bent = make_network({make_station("a", 0, 0), make_station("b", 1, 1),
                                  make_station("c", 2, 0)},
                                 {{"L", {"a", "b", "c"}}});
  const double rho = circuity_factor(bent.lines().front(), bent.station("a"),
                                     bent.station("c"), CoordinateSystem::planar);
  CHECK(rho == doctest::Approx(std::sqrt(2.0)));
  // symmetric in its arguments
  CHECK(circuity_factor(bent.lines().front(), bent.station("c"),
                        bent.station("a"), CoordinateSystem::planar) ==
        doctest::Approx(rho));
}

TEST_CASE("circuity of co-located stations is degenerate") {
  const std::vector<Station> stations{make_station("a", 0, 0),
                                      make_station("b", 0, 0)};
  const auto line = *Line::from_edges("L", {edge("a", "b", 1.0)});
  CHECK_THROWS_AS(circuity_factor(line, stations[0], stations[1],
                                  CoordinateSystem::planar),
                  DegenerateGeometry);
}

TEST_CASE("validate_line") {
  const auto lcfg = make_construction_config(1.5, 35.0, 8.2);

  SUBCASE("straight 10-mile line passes") {
    const auto net = make_network(
        {make_station("a", 0, 0), make_station("b", 10, 0)}, {{"L", {"a", "b"}}});
    const auto report = validate_line(net.lines().front(), lcfg, net);
    CHECK(report.all_ok());
    CHECK(report.length == doctest::Approx(10.0));
  }
  SUBCASE("short line fails min length only") {
    const auto net = make_network(
        {make_station("a", 0, 0), make_station("b", 5, 0)}, {{"L", {"a", "b"}}});
    const auto report = validate_line(net.lines().front(), lcfg, net);
    CHECK_FALSE(report.min_length_ok);
    CHECK(report.max_length_ok);
    CHECK(report.circuity_ok);
  }
  SUBCASE("L-shaped line fails tight circuity") {
    const auto net = make_network({make_station("a", 0, 0), make_station("b", 4, 0),
                                   make_station("c", 4, 4)},
                                  {{"L", {"a", "b", "c"}}});
    auto tight = make_construction_config(1.2, 35.0, 1.0);
    const auto report = validate_line(net.lines().front(), tight, net);
    CHECK_FALSE(report.circuity_ok);
    CHECK(report.worst_circuity == doctest::Approx(8.0 / (4.0 * std::sqrt(2.0))));
    // the same line passes a looser bound
    auto loose = make_construction_config(1.5, 35.0, 1.0);
    CHECK(validate_line(net.lines().front(), loose, net).circuity_ok);
  }
}

TEST_CASE("single-edge crow-fly lines always pass circuity") {
  std::mt19937 rng(77);
  std::uniform_real_distribution<double> coord(-30.0, 30.0);
  const auto lcfg = make_construction_config(1.0 + 1e-9, 1e9, 1e-12);
  for (int i = 0; i < 50; ++i) {
    const double ax = coord(rng), ay = coord(rng);
    double bx = coord(rng), by = coord(rng);
    while (ax == bx && ay == by) bx = coord(rng);
    const auto net = make_network(
        {make_station("a", ax, ay), make_station("b", bx, by)}, {{"L", {"a", "b"}}});
    const auto report = validate_line(net.lines().front(), lcfg, net);
    CHECK(report.circuity_ok);  // rho == 1 < rho_max for any rho_max > 1
  }
}

TEST_CASE("circuity is >= 1 when edges are crow-fly") {
  std::mt19937 rng(1234);
  std::uniform_real_distribution<double> coord(0.0, 20.0);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Station> stations;
    for (int i = 0; i < 5; ++i) {
      stations.push_back(make_station(std::string(1, char('a' + i)), coord(rng),
                                      coord(rng)));
    }
    bool distinct = true;
    for (std::size_t i = 0; i < stations.size() && distinct; ++i) {
      for (std::size_t j = i + 1; j < stations.size(); ++j) {
        if (crow_fly_distance(stations[i].pos, stations[j].pos,
                              CoordinateSystem::planar) < 1e-6) {
          distinct = false;
          break;
        }
      }
    }
    if (!distinct) continue;
    const auto net =
        make_network(stations, {{"L", {"a", "b", "c", "d", "e"}}});
    const auto& line = net.lines().front();
    for (std::size_t i = 0; i < 5; ++i) {
      for (std::size_t j = i + 1; j < 5; ++j) {
        CHECK(circuity_factor(line, net.stations()[i], net.stations()[j],
                              CoordinateSystem::planar) >= 1.0 - 1e-9);
      }
    }
  }
}

TEST_CASE("network invariant validation") {
  SUBCASE("duplicate station id") {
    CHECK_THROWS_AS(Network::create({make_station("a", 0, 0),
                                     make_station("a", 1, 1)},
                                    {}, {}, CoordinateSystem::planar),
                    TransitError);
  }
  SUBCASE("edge endpoint missing") {
    CHECK_THROWS_AS(Network::create({make_station("a", 0, 0)},
                                    {edge("a", "zz", 1)}, {},
                                    CoordinateSystem::planar),
                    UnknownStation);
  }
  SUBCASE("geographic bounds") {
    CHECK_THROWS_AS(Network::create({make_station("a", 0, 91.0)}, {}, {},
                                    CoordinateSystem::geographic),
                    TransitError);
  }
  SUBCASE("line references unknown edge") {
    const auto line = *Line::from_edges("L", {edge("a", "b", 1)});
    CHECK_THROWS_AS(Network::create({make_station("a", 0, 0),
                                     make_station("b", 1, 0)},
                                    {}, {line}, CoordinateSystem::planar),
                    TransitError);
  }
}

TEST_CASE("demand matrix basics") {
  const auto d = testing::make_demand({{"a", "b", 10.0}, {"b", "a", 2.5}});
  CHECK(d.at("a", "b") == 10.0);
  CHECK(d.at("b", "a") == 2.5);
  CHECK(d.at("a", "zz") == 0.0);
  CHECK(d.symmetric("a", "b") == 12.5);
  CHECK_THROWS_AS(testing::make_demand({{"a", "a", 1.0}}), TransitError);
  CHECK_THROWS_AS(testing::make_demand({{"a", "b", -1.0}}), TransitError);
}
