#include "transit/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "transit/errors.hpp"

namespace transit {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_csv_row(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(trim(field));
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

struct CsvFile {
  std::string name;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

CsvFile read_csv(const std::filesystem::path& file,
                 const std::vector<std::vector<std::string>>& accepted_headers) {
  if (!std::filesystem::exists(file)) {
    throw CsvError("file not found: " + file.string());
  }
  std::ifstream in(file);
  if (!in) throw CsvError("cannot open " + file.string());

  CsvFile csv;
  csv.name = file.filename().string();
  std::string raw;
  if (!std::getline(in, raw)) throw CsvError(csv.name + " is empty");
  csv.header = split_csv_row(trim(raw));
  const bool header_ok =
      std::any_of(accepted_headers.begin(), accepted_headers.end(),
                  [&](const auto& h) { return h == csv.header; });
  if (!header_ok) {
    throw CsvError(csv.name + " has an unexpected header: " + trim(raw));
  }
  int line_no = 1;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty()) continue;
    auto fields = split_csv_row(line);
    if (fields.size() != csv.header.size()) {
      throw CsvError(csv.name + ":" + std::to_string(line_no) +
                     " has wrong field count");
    }
    csv.rows.push_back(std::move(fields));
  }
  return csv;
}

double parse_number(const std::string& file, const std::string& value) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    throw CsvError(file + ": malformed number: " + value);
  }
  return out;
}

}  // namespace

std::string read_text_file(const std::filesystem::path& file) {
  if (!std::filesystem::exists(file)) {
    throw CsvError("file not found: " + file.string());
  }
  std::ifstream in(file);
  if (!in) throw CsvError("cannot open " + file.string());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

Network load_network(const std::filesystem::path& directory) {
  const auto stations_csv =
      read_csv(directory / "stations.csv",
               {{"id", "name", "lat", "lon", "transfer_eligible"},
                {"id", "name", "x", "y", "transfer_eligible"}});
  const CoordinateSystem system = stations_csv.header[2] == "lat"
                                      ? CoordinateSystem::geographic
                                      : CoordinateSystem::planar;

  std::vector<Station> stations;
  stations.reserve(stations_csv.rows.size());
  for (const auto& row : stations_csv.rows) {
    Station s;
    s.id = row[0];
    s.name = row[1];
    if (s.id.empty()) throw CsvError("stations.csv: empty station id");
    if (system == CoordinateSystem::geographic) {
      s.pos.y = parse_number("stations.csv", row[2]);  // lat
      s.pos.x = parse_number("stations.csv", row[3]);  // lon
    } else {
      s.pos.x = parse_number("stations.csv", row[2]);
      s.pos.y = parse_number("stations.csv", row[3]);
    }
    if (row[4] == "1") {
      s.transfer_eligible = true;
    } else if (row[4] == "0") {
      s.transfer_eligible = false;
    } else {
      throw CsvError("stations.csv: transfer_eligible must be 0 or 1, got " +
                     row[4]);
    }
    stations.push_back(std::move(s));
  }

  std::map<std::string, Position> positions;
  for (const Station& s : stations) positions[s.id] = s.pos;

  const auto edges_csv = read_csv(directory / "edges.csv",
                                  {{"station_a", "station_b", "length"}});
  std::vector<Edge> edges;
  edges.reserve(edges_csv.rows.size());
  for (const auto& row : edges_csv.rows) {
    Edge e;
    e.a = row[0];
    e.b = row[1];
    const auto it_a = positions.find(e.a);
    const auto it_b = positions.find(e.b);
    if (it_a == positions.end()) throw UnknownStation(e.a);
    if (it_b == positions.end()) throw UnknownStation(e.b);
    e.length = row[2].empty()
                   ? crow_fly_distance(it_a->second, it_b->second, system)
                   : parse_number("edges.csv", row[2]);
    edges.push_back(std::move(e));
  }

  const auto lines_csv = read_csv(directory / "lines.csv",
                                  {{"line_id", "sequence", "station_id"}});
  std::map<std::string, std::map<long, std::string>> sequences;
  for (const auto& row : lines_csv.rows) {
    const double raw_seq = parse_number("lines.csv", row[1]);
    const long seq = static_cast<long>(raw_seq);
    if (seq < 0 || static_cast<double>(seq) != raw_seq) {
      throw CsvError("lines.csv: sequence must be a non-negative integer, got " +
                     row[1]);
    }
    if (!sequences[row[0]].emplace(seq, row[2]).second) {
      throw CsvError("lines.csv: duplicate sequence " + row[1] + " on line " +
                     row[0]);
    }
  }

  std::map<EdgeKey, double> edge_lengths;
  for (const Edge& e : edges) edge_lengths[e.key()] = e.length;

  std::vector<Line> lines;
  lines.reserve(sequences.size());
  for (const auto& [line_id, by_seq] : sequences) {
    long expected = 0;
    std::vector<Edge> member_edges;
    std::string prev;
    for (const auto& [seq, station_id] : by_seq) {
      if (seq != expected++) {
        throw CsvError("lines.csv: line " + line_id +
                       " sequence numbers are not contiguous from 0");
      }
      if (!prev.empty()) {
        const EdgeKey key = make_edge_key(prev, station_id);
        const auto it = edge_lengths.find(key);
        if (it == edge_lengths.end()) {
          throw CsvError("lines.csv: line " + line_id + " needs edge " + prev +
                         "--" + station_id + " which is not in edges.csv");
        }
        member_edges.push_back(Edge{key.first, key.second, it->second});
      }
      prev = station_id;
    }
    auto line = Line::from_edges(line_id, member_edges);
    if (!line) {
      throw CsvError("lines.csv: line " + line_id + " is not a simple path");
    }
    lines.push_back(std::move(*line));
  }

  return Network::create(std::move(stations), std::move(edges),
                         std::move(lines), system);
}

DemandMatrix load_demand(const std::filesystem::path& file, const Network& net) {
  const auto csv = read_csv(file, {{"origin", "destination", "demand"}});
  DemandMatrix::Entries entries;
  for (const auto& row : csv.rows) {
    if (net.find_station(row[0]) == nullptr) throw UnknownStation(row[0]);
    if (net.find_station(row[1]) == nullptr) throw UnknownStation(row[1]);
    const double value = parse_number("demand.csv", row[2]);
    if (value < 0.0) {
      throw CsvError("demand.csv: negative demand for " + row[0] + " -> " + row[1]);
    }
    if (!entries.emplace(std::make_pair(row[0], row[1]), value).second) {
      throw CsvError("demand.csv: duplicate pair " + row[0] + " -> " + row[1]);
    }
  }
  return DemandMatrix::create(std::move(entries));
}

CostTable load_costs(const std::filesystem::path& file) {
  return parse_cost_table(read_text_file(file));
}

EfficiencyConfig load_efficiency_config(const std::filesystem::path& file) {
  return parse_efficiency_config(read_text_file(file));
}

LineConstructionConfig load_construction_config(const std::filesystem::path& file) {
  return parse_construction_config(read_text_file(file));
}

}  // namespace transit
