#include "transit/line_addition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "transit/errors.hpp"
#include "transit/geometry.hpp"

namespace transit {

namespace {

double decay(double excess, double w) { return 1.0 / (1.0 + excess * w); }

// Removes revisit loops from a station walk: while some station occurs more
// than once, drop everything between its first and last occurrence.
void excise_loops(std::vector<std::string>& walk,
                  std::vector<std::string>* warnings) {
  while (true) {
    std::map<std::string, std::pair<std::size_t, std::size_t>> occurrences;
    for (std::size_t i = 0; i < walk.size(); ++i) {
      auto [it, inserted] = occurrences.emplace(walk[i], std::make_pair(i, i));
      if (!inserted) it->second.second = i;
    }
    std::size_t first = walk.size(), last = 0;
    for (std::size_t i = 0; i < walk.size(); ++i) {
      const auto& range = occurrences.at(walk[i]);
      if (range.second > range.first) {
        first = range.first;
        last = range.second;
        break;
      }
    }
    if (first >= walk.size()) return;
    if (warnings != nullptr) {
      warnings->push_back("discarded duplicated segment around " + walk[first]);
    }
    walk.erase(walk.begin() + static_cast<std::ptrdiff_t>(first) + 1,
               walk.begin() + static_cast<std::ptrdiff_t>(last) + 1);
  }
}

Line walk_to_line(const std::vector<std::string>& walk, const Network& net,
                  std::string line_id) {
  std::vector<Edge> edges;
  edges.reserve(walk.size());
  for (std::size_t i = 1; i < walk.size(); ++i) {
    const EdgeKey key = make_edge_key(walk[i - 1], walk[i]);
    const double length =
        net.edge_length(key).value_or(net.crow_fly(walk[i - 1], walk[i]));
    edges.push_back(Edge{key.first, key.second, length});
  }
  auto line = Line::from_edges(std::move(line_id), edges);
  if (!line) throw TransitError("internal: constructed walk is not a simple path");
  return *line;
}

std::vector<std::string> construct_walk(const std::string& station_i,
                                        const std::string& station_j,
                                        const std::set<std::string>& exclude,
                                        const Network& net,
                                        const DemandMatrix& demand,
                                        const LineConstructionConfig& lcfg,
                                        std::vector<std::string>* warnings) {
  const Position& pos_i = net.station(station_i).pos;
  const Position& pos_j = net.station(station_j).pos;

  std::string pick;
  double pick_demand = -std::numeric_limits<double>::infinity();
  for (const Station& s : net.stations()) {
    if (!s.transfer_eligible || s.id == station_i || s.id == station_j ||
        exclude.count(s.id) > 0) {
      continue;
    }
    if (!corridor_contains(pos_i, pos_j, s.pos, lcfg.corridor_height,
                           net.coordinate_system())) {
      continue;
    }
    const double d =
        demand.symmetric(station_i, s.id) + demand.symmetric(s.id, station_j);
    if (d > pick_demand || (d == pick_demand && s.id < pick)) {
      pick_demand = d;
      pick = s.id;
    }
  }
  if (pick.empty()) return {station_i, station_j};

  std::set<std::string> deeper = exclude;
  deeper.insert(station_i);
  deeper.insert(station_j);
  deeper.insert(pick);
  std::vector<std::string> walk =
      construct_walk(station_i, pick, deeper, net, demand, lcfg, warnings);
  const std::vector<std::string> right =
      construct_walk(pick, station_j, deeper, net, demand, lcfg, warnings);
  walk.insert(walk.end(), right.begin() + 1, right.end());
  excise_loops(walk, warnings);
  return walk;
}

bool passes_construction_constraints(const Line& line, const Network& net,
                                     const LineConstructionConfig& lcfg) {
  const ValidationReport report = validate_line(line, lcfg, net);
  return report.max_length_ok && report.circuity_ok;
}

// Line efficiency used for ranking candidates. A candidate that serves no
// raw demand has an undefined value under log schemes; rank it as infinitely
// bad rather than aborting the run.
std::optional<double> candidate_efficiency(const Line& line, const Network& net,
                                           const DemandMatrix& demand,
                                           const EfficiencyConfig& ecfg,
                                           const CostTable& costs) {
  try {
    return line_efficiency(line, net, demand, ecfg, costs);
  } catch (const NonPositiveLogOperand&) {
    return std::nullopt;
  }
}

}  // namespace

EdgeKey EfficiencyMatrix::worst() const {
  if (entries.empty()) throw TransitError("efficiency matrix is empty");
  auto best = entries.begin();
  for (auto it = std::next(entries.begin()); it != entries.end(); ++it) {
    if (it->second.score > best->second.score) best = it;
  }
  return best->first;
}

double calculate_demand_weight(const Path& container,
                               const std::string& sub_origin,
                               const std::string& sub_dest, double w) {
  const auto& seq = container.stations;
  const auto it_o = std::find(seq.begin(), seq.end(), sub_origin);
  const auto it_d = std::find(seq.begin(), seq.end(), sub_dest);
  if (it_o == seq.end() || it_d == seq.end()) {
    throw TransitError("sub-path endpoints not on container path");
  }
  std::size_t lo = static_cast<std::size_t>(it_o - seq.begin());
  std::size_t hi = static_cast<std::size_t>(it_d - seq.begin());
  if (lo > hi) std::swap(lo, hi);
  double before = 0.0;
  for (std::size_t i = 0; i < lo; ++i) before += container.segment_lengths[i];
  double after = 0.0;
  for (std::size_t i = hi; i < container.segment_lengths.size(); ++i) {
    after += container.segment_lengths[i];
  }
  return decay(before + after, w);
}

EfficiencyMatrix create_efficiency_matrix(const Network& net,
                                          const DemandMatrix& demand,
                                          const EfficiencyConfig& ecfg,
                                          const LineConstructionConfig& lcfg,
                                          PathStrategy strategy) {
  const PathContext ctx(net, {});
  const double w = lcfg.demand_adjustment_weight;

  struct ContainerPath {
    std::optional<Path> path;
    double demand_sum = 0.0;
    std::map<std::string, std::size_t> position;
    std::vector<double> prefix;  // along-path distance to each station
  };

  // One container per unordered demand-positive pair.
  std::map<EdgeKey, ContainerPath> containers;
  for (const auto& [pair, d] : demand.entries()) {
    if (d <= 0.0) continue;
    const EdgeKey key = make_edge_key(pair.first, pair.second);
    auto [it, inserted] = containers.emplace(key, ContainerPath{});
    it->second.demand_sum += d;
    if (!inserted) continue;
    it->second.path = ctx.best_path(key.first, key.second, strategy);
    if (!it->second.path && !ecfg.unreachable_penalty) {
      throw UnreachablePair(key.first, key.second);
    }
    if (it->second.path) {
      const auto& seq = it->second.path->stations;
      it->second.prefix.assign(seq.size(), 0.0);
      for (std::size_t i = 0; i < seq.size(); ++i) {
        it->second.position.emplace(seq[i], i);
        if (i > 0) {
          it->second.prefix[i] = it->second.prefix[i - 1] +
                                 it->second.path->segment_lengths[i - 1];
        }
      }
    }
  }

  // Candidate pairs: demand pairs plus every station pair co-located on some
  // container path (only those can receive pass-through demand).
  std::set<EdgeKey> candidate_pairs;
  for (const auto& [key, container] : containers) {
    candidate_pairs.insert(key);
    if (!container.path) continue;
    const auto& seq = container.path->stations;
    for (std::size_t i = 0; i < seq.size(); ++i) {
      for (std::size_t j = i + 1; j < seq.size(); ++j) {
        candidate_pairs.insert(make_edge_key(seq[i], seq[j]));
      }
    }
  }

  EfficiencyMatrix matrix;
  for (const EdgeKey& pair : candidate_pairs) {
    const auto path = ctx.best_path(pair.first, pair.second, strategy);
    double modified = demand.symmetric(pair.first, pair.second);
    if (path) {
      for (const auto& [container_key, container] : containers) {
        if (container_key == pair || !container.path) continue;
        const auto pos_a = container.position.find(pair.first);
        const auto pos_b = container.position.find(pair.second);
        if (pos_a == container.position.end() ||
            pos_b == container.position.end()) {
          continue;
        }
        std::size_t lo = pos_a->second;
        std::size_t hi = pos_b->second;
        if (lo > hi) std::swap(lo, hi);
        // The sub-path counts only when the container's segment between the
        // two stations is exactly this pair's best path (either direction).
        if (hi - lo + 1 != path->stations.size()) continue;
        const auto& seq = container.path->stations;
        const bool forward = std::equal(path->stations.begin(),
                                        path->stations.end(), seq.begin() + lo);
        const bool backward =
            std::equal(path->stations.rbegin(), path->stations.rend(),
                       seq.begin() + lo);
        if (!forward && !backward) continue;
        const double excess =
            container.prefix[lo] +
            (container.prefix.back() - container.prefix[hi]);
        modified += container.demand_sum * decay(excess, w);
      }
    }
    if (modified <= 0.0) continue;

    double efficiency;
    if (path) {
      efficiency =
          path_efficiency(*path, net.crow_fly(pair.first, pair.second), ecfg);
    } else if (ecfg.unreachable_penalty) {
      efficiency = *ecfg.unreachable_penalty;
    } else {
      throw UnreachablePair(pair.first, pair.second);
    }
    matrix.entries[pair] =
        EfficiencyMatrix::Entry{efficiency * modified, modified};
  }
  return matrix;
}

void update_efficiencies(EfficiencyMatrix& matrix,
                         const std::vector<Line>& candidates, const Network& net,
                         const EfficiencyConfig& ecfg, PathStrategy strategy) {
  if (matrix.entries.empty()) return;
  const PathContext ctx(net, candidates);
  // Refreshes are idempotent within one call, so every pair is recomputed at
  // most twice before the worst stabilizes.
  std::size_t budget = 2 * matrix.entries.size() + 2;
  while (budget-- > 0) {
    const EdgeKey worst = matrix.worst();
    auto& entry = matrix.entries.at(worst);
    const auto path = ctx.best_path(worst.first, worst.second, strategy);
    double efficiency;
    if (path) {
      efficiency =
          path_efficiency(*path, net.crow_fly(worst.first, worst.second), ecfg);
    } else if (ecfg.unreachable_penalty) {
      efficiency = *ecfg.unreachable_penalty;
    } else {
      throw UnreachablePair(worst.first, worst.second);
    }
    entry.score = efficiency * entry.modified_demand;
    if (matrix.worst() == worst) return;
  }
  throw TransitError("update_efficiencies did not reach a fixed point");
}

Line construct_line(const std::string& station_i, const std::string& station_j,
                    const std::set<std::string>& exclude, const Network& net,
                    const DemandMatrix& demand,
                    const LineConstructionConfig& lcfg, std::string line_id,
                    std::vector<std::string>* warnings) {
  net.station(station_i);
  net.station(station_j);
  const std::vector<std::string> walk =
      construct_walk(station_i, station_j, exclude, net, demand, lcfg, warnings);
  return walk_to_line(walk, net, std::move(line_id));
}

std::optional<Line> add_to_line(const std::string& v_new, const Line& r,
                                const Network& net, const DemandMatrix& demand,
                                const LineConstructionConfig& lcfg) {
  if (r.empty() || r.contains_station(v_new)) return std::nullopt;
  const std::vector<std::string>& seq = r.stations();
  std::set<std::string> exclude(seq.begin(), seq.end());
  exclude.insert(v_new);

  std::optional<Line> best;
  for (std::size_t gap = 0; gap <= seq.size(); ++gap) {
    std::vector<std::string> walk;
    if (gap == 0) {
      walk = construct_walk(v_new, seq.front(), exclude, net, demand, lcfg,
                            nullptr);
      walk.insert(walk.end(), seq.begin() + 1, seq.end());
    } else if (gap == seq.size()) {
      walk.assign(seq.begin(), seq.end());
      const auto tail =
          construct_walk(seq.back(), v_new, exclude, net, demand, lcfg, nullptr);
      walk.insert(walk.end(), tail.begin() + 1, tail.end());
    } else {
      // Splice between seq[gap-1] and seq[gap], replacing their edge.
      auto middle = construct_walk(seq[gap - 1], v_new, exclude, net, demand,
                                   lcfg, nullptr);
      const auto right =
          construct_walk(v_new, seq[gap], exclude, net, demand, lcfg, nullptr);
      middle.insert(middle.end(), right.begin() + 1, right.end());
      excise_loops(middle, nullptr);
      walk.assign(seq.begin(), seq.begin() + static_cast<std::ptrdiff_t>(gap) - 1);
      walk.insert(walk.end(), middle.begin(), middle.end());
      walk.insert(walk.end(), seq.begin() + static_cast<std::ptrdiff_t>(gap) + 1,
                  seq.end());
    }
    excise_loops(walk, nullptr);
    if (std::find(walk.begin(), walk.end(), v_new) == walk.end()) continue;

    const Line candidate = walk_to_line(walk, net, r.id());
    if (!passes_construction_constraints(candidate, net, lcfg)) continue;
    if (!best || candidate.length() < best->length()) best = candidate;
  }
  return best;
}

std::optional<Line> join_line(const Line& line_i, const Line& line_j,
                              const Network& net,
                              const LineConstructionConfig& lcfg) {
  if (line_i.empty() || line_j.empty()) return std::nullopt;

  const auto has_end_overlap = [](const std::vector<std::string>& a,
                                  const std::vector<std::string>& b) {
    const std::size_t max_n = std::min(a.size(), b.size());
    for (std::size_t n = 1; n <= max_n; ++n) {
      if (std::equal(a.end() - static_cast<std::ptrdiff_t>(n), a.end(),
                     b.begin())) {
        return true;
      }
    }
    return false;
  };

  std::vector<std::string> fwd_i = line_i.stations();
  std::vector<std::string> fwd_j = line_j.stations();
  std::vector<std::string> rev_i(fwd_i.rbegin(), fwd_i.rend());
  std::vector<std::string> rev_j(fwd_j.rbegin(), fwd_j.rend());
  const bool overlap =
      has_end_overlap(fwd_i, fwd_j) || has_end_overlap(fwd_i, rev_j) ||
      has_end_overlap(rev_i, fwd_j) || has_end_overlap(rev_i, rev_j);
  if (!overlap) return std::nullopt;

  const auto joined = line_union(line_i, line_j);
  if (!joined) return std::nullopt;
  // A union equal to one of the inputs creates no new line.
  if (*joined == line_i || *joined == line_j) return std::nullopt;
  if (!passes_construction_constraints(*joined, net, lcfg)) return std::nullopt;
  return joined;
}

void remove_subset_lines(std::vector<Line>& candidates, const Network& net) {
  std::vector<bool> removed(candidates.size(), false);
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    for (const Line& existing : net.lines()) {
      if (is_subset_line(candidates[i], existing)) {
        removed[i] = true;
        break;
      }
    }
    if (removed[i]) continue;
    for (std::size_t j = 0; j < candidates.size(); ++j) {
      if (j == i || !is_subset_line(candidates[i], candidates[j])) continue;
      const bool equal = is_subset_line(candidates[j], candidates[i]);
      if (!equal || j < i) {
        removed[i] = true;
        break;
      }
    }
  }
  std::vector<Line> kept;
  kept.reserve(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (!removed[i]) kept.push_back(std::move(candidates[i]));
  }
  candidates = std::move(kept);
}

bool target_efficiency_satisfied(const std::vector<Line>& candidates,
                                 const Network& net, const DemandMatrix& demand,
                                 const EfficiencyConfig& ecfg,
                                 const LineConstructionConfig& lcfg,
                                 const CostTable& costs) {
  for (const Line& candidate : candidates) {
    if (!validate_line(candidate, lcfg, net).all_ok()) continue;
    const auto efficiency =
        candidate_efficiency(candidate, net, demand, ecfg, costs);
    if (efficiency && *efficiency < lcfg.target_efficiency) return true;
  }
  return false;
}

Line find_best_line(const std::vector<Line>& candidates, const Network& net,
                    const DemandMatrix& demand, const EfficiencyConfig& ecfg,
                    const LineConstructionConfig& lcfg, const CostTable& costs) {
  const Line* best = nullptr;
  double best_efficiency = 0.0;
  double best_cost = 0.0;
  for (const Line& candidate : candidates) {
    if (!validate_line(candidate, lcfg, net).all_ok()) continue;
    const auto efficiency =
        candidate_efficiency(candidate, net, demand, ecfg, costs);
    if (!efficiency) continue;
    const double cost = construction_cost(candidate, costs, ecfg.cost_mode);
    const auto terminals = [](const Line& line) {
      return std::make_pair(line.stations().front(), line.stations().back());
    };
    const bool better =
        best == nullptr || *efficiency < best_efficiency ||
        (*efficiency == best_efficiency &&
         (cost < best_cost ||
          (cost == best_cost && terminals(candidate) < terminals(*best))));
    if (better) {
      best = &candidate;
      best_efficiency = *efficiency;
      best_cost = cost;
    }
  }
  if (best == nullptr) {
    throw NoFeasibleLine("no candidate satisfies all line constraints");
  }
  return *best;
}

RunResult line_addition(const Network& net, const DemandMatrix& demand,
                        const EfficiencyConfig& ecfg,
                        const LineConstructionConfig& lcfg,
                        const CostTable& costs, PathStrategy strategy) {
  ecfg.validate();
  lcfg.validate();

  RunResult run;
  EfficiencyMatrix matrix =
      create_efficiency_matrix(net, demand, ecfg, lcfg, strategy);
  const std::size_t pair_budget = matrix.entries.size();

  std::vector<Line> candidates;
  int next_line = 1;
  const auto fresh_id = [&next_line] {
    return "new-" + std::to_string(next_line++);
  };

  while (!target_efficiency_satisfied(candidates, net, demand, ecfg, lcfg,
                                      costs) &&
         !matrix.empty()) {
    if (run.iterations.size() >= pair_budget) {
      throw TransitError("main loop exceeded its pair budget");
    }
    const EdgeKey worst = matrix.worst();
    IterationRecord record;
    record.pair = worst;

    std::optional<Line> produced;

    // Insert the free station of the pair into the best-suited candidate
    // already containing the other one.
    const auto try_insert = [&](const std::string& anchor,
                                const std::string& inserted) {
      std::optional<Line> best_line;
      std::size_t best_index = 0;
      for (std::size_t c = 0; c < candidates.size(); ++c) {
        if (!candidates[c].contains_station(anchor) ||
            candidates[c].contains_station(inserted)) {
          continue;
        }
        const auto result =
            add_to_line(inserted, candidates[c], net, demand, lcfg);
        if (result && (!best_line || result->length() < best_line->length())) {
          best_line = result;
          best_index = c;
        }
      }
      if (!best_line) return false;
      candidates[best_index] = *best_line;
      produced = *best_line;
      record.action = "insert";
      for (std::size_t c = 0; c < candidates.size(); ++c) {
        if (c == best_index) continue;
        const auto joined = join_line(candidates[c], *best_line, net, lcfg);
        if (joined) {
          candidates.push_back(joined->with_id(fresh_id()));
          ++record.joins;
        }
      }
      return true;
    };

    const auto contains = [&candidates](const std::string& id) {
      return std::any_of(candidates.begin(), candidates.end(),
                         [&id](const Line& c) { return c.contains_station(id); });
    };

    bool inserted = false;
    if (contains(worst.first)) {
      inserted = try_insert(worst.first, worst.second);
    } else if (contains(worst.second)) {
      inserted = try_insert(worst.second, worst.first);
    }
    if (!inserted) {
      const Line constructed =
          construct_line(worst.first, worst.second, {}, net, demand, lcfg,
                         fresh_id(), &record.notes);
      if (passes_construction_constraints(constructed, net, lcfg)) {
        candidates.push_back(constructed);
        produced = constructed;
        record.action = "construct";
      } else {
        record.action = "skip";
        record.notes.push_back("constructed line violates circuity or max length");
      }
    }

    // Pairs now directly covered by the produced line ride it transfer-free;
    // retire them. The processed pair leaves unconditionally so the loop
    // always makes progress.
    if (produced) {
      for (auto it = matrix.entries.begin(); it != matrix.entries.end();) {
        if (produced->contains_station(it->first.first) &&
            produced->contains_station(it->first.second)) {
          it = matrix.entries.erase(it);
        } else {
          ++it;
        }
      }
    }
    matrix.entries.erase(worst);

    remove_subset_lines(candidates, net);
    update_efficiencies(matrix, candidates, net, ecfg, strategy);

    record.candidates = candidates.size();
    run.iterations.push_back(std::move(record));
  }

  run.line = find_best_line(candidates, net, demand, ecfg, lcfg, costs);
  run.old_efficiency =
      network_efficiency(net, {}, demand, ecfg, costs, strategy);
  run.new_efficiency =
      network_efficiency(net, {run.line}, demand, ecfg, costs, strategy);
  run.improvement = run.new_efficiency - run.old_efficiency;
  run.percentage_improvement = run.improvement / run.old_efficiency * 100.0;
  return run;
}

}  // namespace transit
