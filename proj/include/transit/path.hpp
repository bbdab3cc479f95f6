#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "transit/network.hpp"

namespace transit {

enum class PathStrategy {
  shortest_distance,    // minimum total distance, transfers resolved after
  transfer_minimizing,  // lexicographic minimum of (transfers, distance)
};

struct Path {
  std::string origin;
  std::string destination;
  std::vector<std::string> stations;      // ordered, size = edges + 1
  std::vector<EdgeKey> edges;             // ordered along travel
  std::vector<double> segment_lengths;    // miles per edge
  std::vector<std::string> segment_lines; // assigned line id per edge
  int transfers = 0;
  double distance = 0.0;                  // sum of segment lengths

  int station_count() const { return static_cast<int>(stations.size()); }
};

// Minimum-label-change assignment of lines to an ordered edge sequence.
// lines_available maps line id -> edge set. Throws UncoveredEdge when some
// edge belongs to no line.
struct LineAssignment {
  std::vector<std::string> segment_lines;
  int transfers = 0;
};
LineAssignment assign_lines(const std::vector<EdgeKey>& edge_seq,
                            const std::vector<Line>& lines_available);

// Reusable search universe over the network plus candidate lines. Cheap to
// query repeatedly; rebuild whenever extra_lines changes.
class PathContext {
 public:
  PathContext(const Network& net, const std::vector<Line>& extra_lines);

  std::optional<Path> best_path(const std::string& origin,
                                const std::string& destination,
                                PathStrategy strategy) const;

  const Network& network() const { return *net_; }

 private:
  struct Arc {
    int to;
    double length;
    std::vector<int> lines;  // indices into lines_, sorted by line id
  };

  std::optional<std::vector<int>> shortest_distance_sequence(int from, int to) const;
  std::optional<std::vector<int>> min_transfer_sequence(int from, int to) const;
  Path finish(const std::vector<int>& canonical, bool reversed,
              const std::string& origin, const std::string& destination) const;

  const Network* net_;
  std::vector<Line> lines_;                  // network lines then extra lines
  std::vector<std::string> ids_;             // station ids, sorted; index = lex rank
  std::map<std::string, int> index_of_;
  std::vector<std::vector<Arc>> adjacency_;  // by station index, sorted by `to`
  std::map<EdgeKey, double> edge_lengths_;
  double heuristic_scale_ = 1.0;             // keeps crow-fly admissible
};

// One-shot convenience wrapper. Throws UnknownStation for ids not in net.
std::optional<Path> best_path(const Network& net,
                              const std::vector<Line>& extra_lines,
                              const std::string& origin,
                              const std::string& destination,
                              PathStrategy strategy);

}  // namespace transit
