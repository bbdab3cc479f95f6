#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "transit/config.hpp"
#include "transit/evaluation.hpp"
#include "transit/network.hpp"
#include "transit/path.hpp"

namespace transit {

// Greedy work queue: one entry per unordered station pair, scored by
// path efficiency times modified demand. Entries only ever leave the
// matrix; covered pairs never reappear.
struct EfficiencyMatrix {
  struct Entry {
    double score = 0.0;
    double modified_demand = 0.0;
  };

  std::map<EdgeKey, Entry> entries;  // key = unordered station-id pair

  bool empty() const { return entries.empty(); }

  // Highest score; ties broken toward the lexicographically smaller pair.
  EdgeKey worst() const;
};

// 1 / (1 + excess * w), where excess is the along-path distance from the
// container's origin to sub_origin plus the distance from sub_dest to the
// container's destination.
double calculate_demand_weight(const Path& container,
                               const std::string& sub_origin,
                               const std::string& sub_dest, double w);

// Builds the matrix over the existing network: per unordered pair, the
// aggregated two-way demand plus decayed demand of every trip whose best
// path contains this pair's best path as a contiguous sub-path.
EfficiencyMatrix create_efficiency_matrix(const Network& net,
                                          const DemandMatrix& demand,
                                          const EfficiencyConfig& ecfg,
                                          const LineConstructionConfig& lcfg,
                                          PathStrategy strategy);

// Lazily refreshes scores against network + candidates: recompute the worst
// pair until the recomputed worst stays the worst.
void update_efficiencies(EfficiencyMatrix& matrix,
                         const std::vector<Line>& candidates, const Network& net,
                         const EfficiencyConfig& ecfg, PathStrategy strategy);

// Recursive corridor construction between two stations. Eligible corridor
// stations are transfer-eligible, outside `exclude`, and not the endpoints;
// the highest-demand one splits the pair and both halves recurse. New edges
// take crow-fly length, existing edges are reused. If warnings is non-null
// it receives a note whenever a duplicated segment had to be discarded.
Line construct_line(const std::string& station_i, const std::string& station_j,
                    const std::set<std::string>& exclude, const Network& net,
                    const DemandMatrix& demand,
                    const LineConstructionConfig& lcfg, std::string line_id,
                    std::vector<std::string>* warnings = nullptr);

// Tries every insertion position for v_new on r and returns the cheapest
// result that satisfies circuity and max length, or nullopt.
std::optional<Line> add_to_line(const std::string& v_new, const Line& r,
                                const Network& net, const DemandMatrix& demand,
                                const LineConstructionConfig& lcfg);

// Joins two lines whose ends overlap by n >= 1 stations (any orientation).
// Returns the union when it is a simple path satisfying circuity and max
// length and is not equal to either input; nullopt otherwise.
std::optional<Line> join_line(const Line& line_i, const Line& line_j,
                              const Network& net,
                              const LineConstructionConfig& lcfg);

// Deletes every candidate whose edge set is contained in another candidate
// or in an existing network line. Of equal candidates the earliest survives.
void remove_subset_lines(std::vector<Line>& candidates, const Network& net);

// True iff some candidate passes all length and circuity constraints and has
// line efficiency strictly below the target.
bool target_efficiency_satisfied(const std::vector<Line>& candidates,
                                 const Network& net, const DemandMatrix& demand,
                                 const EfficiencyConfig& ecfg,
                                 const LineConstructionConfig& lcfg,
                                 const CostTable& costs);

// Among fully valid candidates, the one with minimum line efficiency; ties
// by construction cost, then by terminal station ids. Throws NoFeasibleLine.
Line find_best_line(const std::vector<Line>& candidates, const Network& net,
                    const DemandMatrix& demand, const EfficiencyConfig& ecfg,
                    const LineConstructionConfig& lcfg, const CostTable& costs);

struct IterationRecord {
  EdgeKey pair;          // worst pair processed this iteration
  std::string action;    // "insert", "construct", or "skip"
  int joins = 0;         // joins kept this iteration
  std::size_t candidates = 0;  // candidate count after the iteration
  std::vector<std::string> notes;
};

struct RunResult {
  Line line;
  double old_efficiency = 0.0;
  double new_efficiency = 0.0;
  double improvement = 0.0;             // new - old; negative is better
  double percentage_improvement = 0.0;  // improvement / old * 100
  std::vector<IterationRecord> iterations;
};

// The main greedy loop: process worst pairs, grow/join/construct candidates,
// stop when the target efficiency is satisfied or the matrix is empty, and
// return the best candidate with before/after network efficiency.
RunResult line_addition(const Network& net, const DemandMatrix& demand,
                        const EfficiencyConfig& ecfg,
                        const LineConstructionConfig& lcfg,
                        const CostTable& costs, PathStrategy strategy);

}  // namespace transit
