#include "transit/path.hpp"

#include <algorithm>
#include <limits>
#include <queue>

#include "transit/errors.hpp"

namespace transit {

namespace {

// Lexicographic comparison of station-index sequences. Indices are ranks in
// sorted-id order, so this matches comparison by station id.
bool seq_less(const std::vector<int>& a, const std::vector<int>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

LineAssignment assign_lines(const std::vector<EdgeKey>& edge_seq,
                            const std::vector<Line>& lines_available) {
  LineAssignment result;
  if (edge_seq.empty()) return result;

  // Deterministic line order: by id, then position.
  std::vector<std::size_t> order(lines_available.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return lines_available[a].id() != lines_available[b].id()
               ? lines_available[a].id() < lines_available[b].id()
               : a < b;
  });

  std::vector<std::vector<std::size_t>> candidates(edge_seq.size());
  for (std::size_t i = 0; i < edge_seq.size(); ++i) {
    for (std::size_t idx : order) {
      if (lines_available[idx].has_edge(edge_seq[i])) {
        candidates[i].push_back(idx);
      }
    }
    if (candidates[i].empty()) {
      throw UncoveredEdge(edge_seq[i].first, edge_seq[i].second);
    }
  }

  constexpr int kInf = std::numeric_limits<int>::max() / 2;
  std::vector<std::vector<int>> cost(edge_seq.size());
  cost[0].assign(candidates[0].size(), 0);
  for (std::size_t i = 1; i < edge_seq.size(); ++i) {
    cost[i].assign(candidates[i].size(), kInf);
    for (std::size_t k = 0; k < candidates[i].size(); ++k) {
      for (std::size_t p = 0; p < candidates[i - 1].size(); ++p) {
        const int change = candidates[i][k] != candidates[i - 1][p] ? 1 : 0;
        cost[i][k] = std::min(cost[i][k], cost[i - 1][p] + change);
      }
    }
  }

  const std::size_t last = edge_seq.size() - 1;
  std::size_t pick = 0;
  for (std::size_t k = 1; k < candidates[last].size(); ++k) {
    if (cost[last][k] < cost[last][pick]) pick = k;
  }
  result.transfers = cost[last][pick];

  std::vector<std::size_t> chosen(edge_seq.size());
  chosen[last] = candidates[last][pick];
  for (std::size_t i = last; i > 0; --i) {
    const int target = cost[i][pick];
    std::size_t best = candidates[i - 1].size();
    for (std::size_t p = 0; p < candidates[i - 1].size(); ++p) {
      const int change = candidates[i][pick] != candidates[i - 1][p] ? 1 : 0;
      if (cost[i - 1][p] + change != target) continue;
      // Prefer staying on the same line, otherwise the first (smallest id).
      if (candidates[i - 1][p] == candidates[i][pick]) {
        best = p;
        break;
      }
      if (best == candidates[i - 1].size()) best = p;
    }
    pick = best;
    chosen[i - 1] = candidates[i - 1][pick];
  }

  result.segment_lines.reserve(edge_seq.size());
  for (std::size_t i = 0; i < edge_seq.size(); ++i) {
    result.segment_lines.push_back(lines_available[chosen[i]].id());
  }
  return result;
}

PathContext::PathContext(const Network& net, const std::vector<Line>& extra_lines)
    : net_(&net) {
  lines_ = net.lines();
  lines_.insert(lines_.end(), extra_lines.begin(), extra_lines.end());

  ids_.reserve(net.stations().size());
  for (const Station& s : net.stations()) ids_.push_back(s.id);
  std::sort(ids_.begin(), ids_.end());
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    index_of_.emplace(ids_[i], static_cast<int>(i));
  }

  edge_lengths_ = net.edges();
  for (const Line& line : lines_) {
    for (const auto& [key, len] : line.edges()) {
      const auto [it, inserted] = edge_lengths_.emplace(key, len);
      if (!inserted && it->second != len) {
        throw TransitError("conflicting lengths for edge " + key.first + "--" +
                           key.second);
      }
    }
  }

  std::map<EdgeKey, std::vector<int>> coverage;
  std::vector<std::size_t> line_order(lines_.size());
  for (std::size_t i = 0; i < line_order.size(); ++i) line_order[i] = i;
  std::sort(line_order.begin(), line_order.end(),
            [&](std::size_t a, std::size_t b) {
              return lines_[a].id() != lines_[b].id()
                         ? lines_[a].id() < lines_[b].id()
                         : a < b;
            });
  for (std::size_t idx : line_order) {
    for (const auto& [key, len] : lines_[idx].edges()) {
      coverage[key].push_back(static_cast<int>(idx));
    }
  }

  adjacency_.resize(ids_.size());
  for (const auto& [key, len] : edge_lengths_) {
    const auto ia = index_of_.find(key.first);
    const auto ib = index_of_.find(key.second);
    if (ia == index_of_.end() || ib == index_of_.end()) {
      throw UnknownStation(ia == index_of_.end() ? key.first : key.second);
    }
    const auto cov = coverage.find(key);
    const std::vector<int> lines = cov == coverage.end() ? std::vector<int>{}
                                                         : cov->second;
    adjacency_[ia->second].push_back(Arc{ib->second, len, lines});
    adjacency_[ib->second].push_back(Arc{ia->second, len, lines});
  }
  for (auto& arcs : adjacency_) {
    std::sort(arcs.begin(), arcs.end(),
              [](const Arc& a, const Arc& b) { return a.to < b.to; });
  }

  // Largest scale k such that k * crow_fly(u, v) <= length(u, v) for every
  // edge, so the A* heuristic stays admissible even with explicit edge
  // lengths shorter than the crow-fly distance.
  heuristic_scale_ = 1.0;
  for (const auto& [key, len] : edge_lengths_) {
    const double crow = net.crow_fly(key.first, key.second);
    if (crow > 1e-12) {
      heuristic_scale_ = std::min(heuristic_scale_, len / crow);
    }
  }
  heuristic_scale_ = std::max(heuristic_scale_, 0.0);
}

std::optional<std::vector<int>> PathContext::shortest_distance_sequence(
    int from, int to) const {
  struct Entry {
    double f;
    double g;
    std::vector<int> seq;
    int node;
  };
  const auto entry_greater = [](const Entry& a, const Entry& b) {
    if (a.f != b.f) return a.f > b.f;
    if (a.g != b.g) return a.g > b.g;
    if (a.seq != b.seq) return seq_less(b.seq, a.seq);
    return a.node > b.node;
  };

  const Position target_pos = net_->station(ids_[to]).pos;
  const auto heuristic = [&](int u) {
    return heuristic_scale_ * crow_fly_distance(net_->station(ids_[u]).pos,
                                                target_pos,
                                                net_->coordinate_system());
  };

  std::vector<double> best_g(ids_.size(), std::numeric_limits<double>::infinity());
  std::vector<std::vector<int>> best_seq(ids_.size());
  std::priority_queue<Entry, std::vector<Entry>, decltype(entry_greater)> heap(
      entry_greater);

  best_g[from] = 0.0;
  best_seq[from] = {from};
  heap.push(Entry{heuristic(from), 0.0, {from}, from});

  while (!heap.empty()) {
    const Entry cur = heap.top();
    heap.pop();
    if (cur.g != best_g[cur.node] || cur.seq != best_seq[cur.node]) continue;
    if (cur.node == to) return cur.seq;
    for (const Arc& arc : adjacency_[cur.node]) {
      const double ng = cur.g + arc.length;
      const bool better =
          ng < best_g[arc.to] ||
          (ng == best_g[arc.to] &&
           [&] {
             std::vector<int> candidate = cur.seq;
             candidate.push_back(arc.to);
             return seq_less(candidate, best_seq[arc.to]);
           }());
      if (!better) continue;
      std::vector<int> nseq = cur.seq;
      nseq.push_back(arc.to);
      best_g[arc.to] = ng;
      best_seq[arc.to] = nseq;
      heap.push(Entry{ng + heuristic(arc.to), ng, std::move(nseq), arc.to});
    }
  }
  return std::nullopt;
}

std::optional<std::vector<int>> PathContext::min_transfer_sequence(
    int from, int to) const {
  struct Label {
    int transfers = 0;
    double distance = 0.0;
    std::vector<int> seq;
  };
  struct Entry {
    Label label;
    int node;
    int line;
  };
  const auto label_less = [](const Label& a, const Label& b) {
    if (a.transfers != b.transfers) return a.transfers < b.transfers;
    if (a.distance != b.distance) return a.distance < b.distance;
    return seq_less(a.seq, b.seq);
  };
  const auto entry_greater = [&](const Entry& a, const Entry& b) {
    if (label_less(a.label, b.label)) return false;
    if (label_less(b.label, a.label)) return true;
    if (a.node != b.node) return a.node > b.node;
    return a.line > b.line;
  };

  std::map<std::pair<int, int>, Label> best;
  std::priority_queue<Entry, std::vector<Entry>, decltype(entry_greater)> heap(
      entry_greater);

  const auto offer = [&](int node, int line, Label label) {
    const auto key = std::make_pair(node, line);
    const auto it = best.find(key);
    if (it != best.end() && !label_less(label, it->second)) return;
    best[key] = label;
    heap.push(Entry{std::move(label), node, line});
  };

  for (const Arc& arc : adjacency_[from]) {
    for (int line : arc.lines) {
      offer(arc.to, line, Label{0, arc.length, {from, arc.to}});
    }
  }

  while (!heap.empty()) {
    const Entry cur = heap.top();
    heap.pop();
    const auto it = best.find({cur.node, cur.line});
    if (it == best.end() || label_less(it->second, cur.label) ||
        label_less(cur.label, it->second)) {
      continue;  // stale
    }
    if (cur.node == to) return cur.label.seq;
    for (const Arc& arc : adjacency_[cur.node]) {
      for (int line : arc.lines) {
        Label next{cur.label.transfers + (line != cur.line ? 1 : 0),
                   cur.label.distance + arc.length, cur.label.seq};
        next.seq.push_back(arc.to);
        offer(arc.to, line, std::move(next));
      }
    }
  }
  return std::nullopt;
}

Path PathContext::finish(const std::vector<int>& canonical, bool reversed,
                         const std::string& origin,
                         const std::string& destination) const {
  Path path;
  path.origin = origin;
  path.destination = destination;
  path.stations.reserve(canonical.size());
  for (int idx : canonical) path.stations.push_back(ids_[idx]);
  // Distance always accumulates in canonical orientation so that the two
  // directions of a pair report bit-identical values.
  for (std::size_t i = 1; i < path.stations.size(); ++i) {
    const EdgeKey key = make_edge_key(path.stations[i - 1], path.stations[i]);
    path.edges.push_back(key);
    path.segment_lengths.push_back(edge_lengths_.at(key));
    path.distance += path.segment_lengths.back();
  }
  if (reversed) {
    std::reverse(path.stations.begin(), path.stations.end());
    std::reverse(path.edges.begin(), path.edges.end());
    std::reverse(path.segment_lengths.begin(), path.segment_lengths.end());
  }
  LineAssignment assignment = assign_lines(path.edges, lines_);
  path.segment_lines = std::move(assignment.segment_lines);
  path.transfers = assignment.transfers;
  return path;
}

std::optional<Path> PathContext::best_path(const std::string& origin,
                                           const std::string& destination,
                                           PathStrategy strategy) const {
  const auto it_o = index_of_.find(origin);
  if (it_o == index_of_.end()) throw UnknownStation(origin);
  const auto it_d = index_of_.find(destination);
  if (it_d == index_of_.end()) throw UnknownStation(destination);

  if (origin == destination) {
    Path trivial;
    trivial.origin = origin;
    trivial.destination = destination;
    trivial.stations = {origin};
    return trivial;
  }

  // Search in canonical orientation (lex-smaller endpoint first) so that the
  // two directions of a pair always resolve to the same route.
  const int lo = std::min(it_o->second, it_d->second);
  const int hi = std::max(it_o->second, it_d->second);
  const auto sequence = strategy == PathStrategy::shortest_distance
                            ? shortest_distance_sequence(lo, hi)
                            : min_transfer_sequence(lo, hi);
  if (!sequence) return std::nullopt;
  return finish(*sequence, it_o->second != lo, origin, destination);
}

std::optional<Path> best_path(const Network& net,
                              const std::vector<Line>& extra_lines,
                              const std::string& origin,
                              const std::string& destination,
                              PathStrategy strategy) {
  return PathContext(net, extra_lines).best_path(origin, destination, strategy);
}

}  // namespace transit
