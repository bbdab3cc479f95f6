#include "transit/network.hpp"

#include <algorithm>
#include <set>

#include "transit/config.hpp"
#include "transit/errors.hpp"

namespace transit {

EdgeKey make_edge_key(const std::string& a, const std::string& b) {
  return a <= b ? EdgeKey{a, b} : EdgeKey{b, a};
}

std::optional<Line> Line::from_edges(std::string id,
                                     const std::vector<Edge>& edges) {
  Line line;
  line.id_ = std::move(id);
  for (const Edge& e : edges) {
    if (e.a == e.b) return std::nullopt;
    const EdgeKey key = e.key();
    auto [it, inserted] = line.edges_.emplace(key, e.length);
    if (!inserted && it->second != e.length) return std::nullopt;
  }
  if (line.edges_.empty()) return line;

  // Degree check: a simple path has exactly two degree-1 stations and no
  // station of degree > 2.
  std::map<std::string, std::vector<std::string>> adjacency;
  for (const auto& [key, len] : line.edges_) {
    adjacency[key.first].push_back(key.second);
    adjacency[key.second].push_back(key.first);
  }
  std::vector<std::string> terminals;
  for (const auto& [station, neighbors] : adjacency) {
    if (neighbors.size() > 2) return std::nullopt;
    if (neighbors.size() == 1) terminals.push_back(station);
  }
  if (terminals.size() != 2) return std::nullopt;  // cycle or branches

  // Walk from the smaller terminal; connectivity holds iff the walk covers
  // every edge.
  std::sort(terminals.begin(), terminals.end());
  std::vector<std::string> order{terminals.front()};
  std::string prev;
  while (true) {
    const auto& neighbors = adjacency.at(order.back());
    std::string next;
    for (const auto& n : neighbors) {
      if (n != prev) next = n;
    }
    if (next.empty()) break;
    prev = order.back();
    order.push_back(next);
  }
  if (order.size() != line.edges_.size() + 1) return std::nullopt;
  line.stations_ = std::move(order);
  return line;
}

bool Line::contains_station(const std::string& station_id) const {
  return std::find(stations_.begin(), stations_.end(), station_id) !=
         stations_.end();
}

double Line::length() const {
  double total = 0.0;
  for (const auto& [key, len] : edges_) total += len;
  return total;
}

double Line::distance_between(const std::string& station_i,
                              const std::string& station_j) const {
  const auto pos_i = std::find(stations_.begin(), stations_.end(), station_i);
  const auto pos_j = std::find(stations_.begin(), stations_.end(), station_j);
  if (pos_i == stations_.end() || pos_j == stations_.end()) {
    throw TransitError("station not on line " + id_);
  }
  auto lo = pos_i;
  auto hi = pos_j;
  if (lo > hi) std::swap(lo, hi);
  double total = 0.0;
  for (auto it = lo; it != hi; ++it) {
    total += edges_.at(make_edge_key(*it, *(it + 1)));
  }
  return total;
}

Line Line::with_id(std::string new_id) const {
  Line copy = *this;
  copy.id_ = std::move(new_id);
  return copy;
}

std::optional<Line> line_union(const Line& lhs, const Line& rhs) {
  std::vector<Edge> merged;
  merged.reserve(lhs.edges().size() + rhs.edges().size());
  for (const auto& [key, len] : lhs.edges()) {
    merged.push_back(Edge{key.first, key.second, len});
  }
  for (const auto& [key, len] : rhs.edges()) {
    merged.push_back(Edge{key.first, key.second, len});
  }
  return Line::from_edges(lhs.id(), merged);
}

bool is_subset_line(const Line& inner, const Line& outer) {
  for (const auto& [key, len] : inner.edges()) {
    if (!outer.has_edge(key)) return false;
  }
  return true;
}

double circuity_factor(const Line& r, const Station& station_i,
                       const Station& station_j, CoordinateSystem system) {
  const double direct = crow_fly_distance(station_i.pos, station_j.pos, system);
  if (direct <= 0.0) {
    throw DegenerateGeometry("co-located stations " + station_i.id + ", " +
                             station_j.id);
  }
  return r.distance_between(station_i.id, station_j.id) / direct;
}

ValidationReport validate_line(const Line& r, const LineConstructionConfig& cfg,
                               const Network& net) {
  ValidationReport report;
  report.length = r.length();
  report.min_length_ok = report.length >= cfg.min_length;
  report.max_length_ok = report.length <= cfg.max_length;

  const auto& seq = r.stations();
  std::vector<double> prefix(seq.size(), 0.0);
  for (std::size_t i = 1; i < seq.size(); ++i) {
    prefix[i] = prefix[i - 1] + r.edges().at(make_edge_key(seq[i - 1], seq[i]));
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    for (std::size_t j = i + 1; j < seq.size(); ++j) {
      const double direct = net.crow_fly(seq[i], seq[j]);
      if (direct <= 0.0) {
        throw DegenerateGeometry("co-located stations " + seq[i] + ", " + seq[j]);
      }
      worst = std::max(worst, (prefix[j] - prefix[i]) / direct);
    }
  }
  report.worst_circuity = worst;
  report.circuity_ok = worst < cfg.rho_max;
  return report;
}

Network Network::create(std::vector<Station> stations, std::vector<Edge> edges,
                        std::vector<Line> lines, CoordinateSystem system) {
  Network net;
  net.system_ = system;
  net.stations_ = std::move(stations);
  for (std::size_t i = 0; i < net.stations_.size(); ++i) {
    const Station& s = net.stations_[i];
    if (!net.station_index_.emplace(s.id, i).second) {
      throw TransitError("duplicate station id: " + s.id);
    }
    if (system == CoordinateSystem::geographic) {
      if (s.pos.y < -90.0 || s.pos.y > 90.0 || s.pos.x < -180.0 || s.pos.x > 180.0) {
        throw TransitError("station " + s.id + " has out-of-range coordinates");
      }
    }
  }
  for (const Edge& e : edges) {
    if (e.a == e.b) throw TransitError("self-loop edge at station " + e.a);
    if (net.station_index_.count(e.a) == 0) throw UnknownStation(e.a);
    if (net.station_index_.count(e.b) == 0) throw UnknownStation(e.b);
    if (e.length <= 0.0) {
      throw TransitError("edge " + e.a + "--" + e.b + " has non-positive length");
    }
    if (!net.edges_.emplace(e.key(), e.length).second) {
      throw TransitError("duplicate edge " + e.a + "--" + e.b);
    }
  }
  std::set<std::string> line_ids;
  for (const Line& line : lines) {
    if (!line_ids.insert(line.id()).second) {
      throw TransitError("duplicate line id: " + line.id());
    }
    for (const auto& [key, len] : line.edges()) {
      const auto it = net.edges_.find(key);
      if (it == net.edges_.end()) {
        throw TransitError("line " + line.id() + " references edge " +
                           key.first + "--" + key.second + " not in the network");
      }
      if (it->second != len) {
        throw TransitError("line " + line.id() + " disagrees on length of edge " +
                           key.first + "--" + key.second);
      }
    }
  }
  net.lines_ = std::move(lines);
  return net;
}

const Station& Network::station(const std::string& id) const {
  const auto it = station_index_.find(id);
  if (it == station_index_.end()) throw UnknownStation(id);
  return stations_[it->second];
}

const Station* Network::find_station(const std::string& id) const {
  const auto it = station_index_.find(id);
  return it == station_index_.end() ? nullptr : &stations_[it->second];
}

std::optional<double> Network::edge_length(const EdgeKey& key) const {
  const auto it = edges_.find(key);
  if (it == edges_.end()) return std::nullopt;
  return it->second;
}

double Network::crow_fly(const std::string& station_i,
                         const std::string& station_j) const {
  return crow_fly_distance(station(station_i).pos, station(station_j).pos,
                           system_);
}

DemandMatrix DemandMatrix::create(Entries entries) {
  for (const auto& [pair, value] : entries) {
    if (value < 0.0) {
      throw TransitError("negative demand for " + pair.first + " -> " + pair.second);
    }
    if (pair.first == pair.second && value != 0.0) {
      throw TransitError("nonzero diagonal demand at " + pair.first);
    }
  }
  DemandMatrix d;
  d.entries_ = std::move(entries);
  return d;
}

double DemandMatrix::at(const std::string& origin,
                        const std::string& destination) const {
  const auto it = entries_.find({origin, destination});
  return it == entries_.end() ? 0.0 : it->second;
}

double DemandMatrix::symmetric(const std::string& station_i,
                               const std::string& station_j) const {
  return at(station_i, station_j) + at(station_j, station_i);
}

}  // namespace transit
