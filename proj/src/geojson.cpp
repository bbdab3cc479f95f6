#include "transit/geojson.hpp"

#include <json.hpp>

namespace transit {

namespace {

nlohmann::json line_feature(const Line& line, const Network& net) {
  nlohmann::json coords = nlohmann::json::array();
  for (const std::string& id : line.stations()) {
    const Position& p = net.station(id).pos;
    coords.push_back({p.x, p.y});
  }
  return {
      {"type", "Feature"},
      {"geometry", {{"type", "LineString"}, {"coordinates", coords}}},
      {"properties", {{"id", line.id()}}},
  };
}

}  // namespace

std::string export_geojson(const Network& net,
                           const std::optional<Line>& new_line) {
  nlohmann::json features = nlohmann::json::array();
  for (const Line& line : net.lines()) {
    nlohmann::json feature = line_feature(line, net);
    feature["properties"]["role"] = "existing";
    features.push_back(std::move(feature));
  }
  if (new_line) {
    nlohmann::json feature = line_feature(*new_line, net);
    feature["properties"]["role"] = "new";
    feature["properties"]["stroke"] = "#00FFFF";
    features.push_back(std::move(feature));
  }
  for (const Station& s : net.stations()) {
    features.push_back({
        {"type", "Feature"},
        {"geometry", {{"type", "Point"}, {"coordinates", {s.pos.x, s.pos.y}}}},
        {"properties", {{"id", s.id}, {"name", s.name}}},
    });
  }

  nlohmann::json doc{{"type", "FeatureCollection"}, {"features", features}};
  if (net.coordinate_system() == CoordinateSystem::planar) {
    doc["crs_note"] = "planar-miles";
  }
  return doc.dump(2) + "\n";
}

}  // namespace transit
