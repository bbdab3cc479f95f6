#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "transit/geometry.hpp"

namespace transit {

struct Station {
  std::string id;
  std::string name;
  Position pos;
  bool transfer_eligible = false;
};

// Canonical key for an undirected edge: station ids with first <= second.
using EdgeKey = std::pair<std::string, std::string>;

EdgeKey make_edge_key(const std::string& a, const std::string& b);

struct Edge {
  std::string a;
  std::string b;
  double length = 0.0;  // miles, > 0

  EdgeKey key() const { return make_edge_key(a, b); }
};

// An unordered set of edges that forms a simple path. The canonical station
// ordering is derived from the edge set when the line is built; its first
// terminal is the lexicographically smaller of the two.
class Line {
 public:
  Line() = default;

  // Returns nullopt when the edges do not form a simple path (branch, cycle,
  // disconnected pieces, or the same edge listed with two lengths).
  static std::optional<Line> from_edges(std::string id,
                                        const std::vector<Edge>& edges);

  const std::string& id() const { return id_; }
  const std::map<EdgeKey, double>& edges() const { return edges_; }
  const std::vector<std::string>& stations() const { return stations_; }

  bool empty() const { return edges_.empty(); }
  bool has_edge(const EdgeKey& key) const { return edges_.count(key) > 0; }
  bool contains_station(const std::string& station_id) const;

  // Sum of member edge lengths.
  double length() const;

  // Travel distance along the line between two member stations.
  double distance_between(const std::string& station_i,
                          const std::string& station_j) const;

  Line with_id(std::string new_id) const;

  friend bool operator==(const Line& lhs, const Line& rhs) {
    return lhs.edges_ == rhs.edges_;  // edge-set equality; ids are labels
  }

 private:
  std::string id_;
  std::map<EdgeKey, double> edges_;
  std::vector<std::string> stations_;
};

// Edge-set union. Nullopt when the union is not a simple path. The result
// keeps the left operand's id.
std::optional<Line> line_union(const Line& lhs, const Line& rhs);

// True iff every edge of inner is an edge of outer.
bool is_subset_line(const Line& inner, const Line& outer);

class Network;
struct LineConstructionConfig;

// Ratio of travel distance along r between two member stations to their
// crow-fly distance. Throws DegenerateGeometry when the crow-fly distance
// is zero.
double circuity_factor(const Line& r, const Station& station_i,
                       const Station& station_j, CoordinateSystem system);

struct ValidationReport {
  bool min_length_ok = false;
  bool max_length_ok = false;
  bool circuity_ok = false;
  double length = 0.0;
  double worst_circuity = 0.0;  // 0 when the line has fewer than two stations

  bool all_ok() const { return min_length_ok && max_length_ok && circuity_ok; }
};

// Checks L_min <= length <= L_max and the strict all-pairs circuity bound
// rho < rho_max over every station pair on the line.
ValidationReport validate_line(const Line& r, const LineConstructionConfig& cfg,
                               const Network& net);

// Immutable snapshot of stations, edges, and existing lines. Construction
// validates referential integrity; nothing in this library mutates it.
class Network {
 public:
  static Network create(std::vector<Station> stations, std::vector<Edge> edges,
                        std::vector<Line> lines, CoordinateSystem system);

  const std::vector<Station>& stations() const { return stations_; }
  const std::vector<Line>& lines() const { return lines_; }
  const std::map<EdgeKey, double>& edges() const { return edges_; }
  CoordinateSystem coordinate_system() const { return system_; }

  const Station& station(const std::string& id) const;  // throws UnknownStation
  const Station* find_station(const std::string& id) const;
  std::optional<double> edge_length(const EdgeKey& key) const;

  double crow_fly(const std::string& station_i, const std::string& station_j) const;

 private:
  Network() = default;

  std::vector<Station> stations_;
  std::map<std::string, std::size_t> station_index_;
  std::map<EdgeKey, double> edges_;
  std::vector<Line> lines_;
  CoordinateSystem system_ = CoordinateSystem::planar;
};

// Origin-destination demand. Entries are ordered pairs; absent entries read
// as zero and the diagonal is always zero.
class DemandMatrix {
 public:
  using Entries = std::map<std::pair<std::string, std::string>, double>;

  DemandMatrix() = default;

  // Validates: no negative demand, no nonzero diagonal entries.
  static DemandMatrix create(Entries entries);

  double at(const std::string& origin, const std::string& destination) const;
  double symmetric(const std::string& station_i, const std::string& station_j) const;
  const Entries& entries() const { return entries_; }

 private:
  Entries entries_;
};

}  // namespace transit
