#pragma once

#include <optional>
#include <string>

#include "transit/network.hpp"

namespace transit {

// RFC 7946-shaped FeatureCollection: one LineString per existing line
// (role "existing"), an optional LineString for the new line (role "new",
// cyan stroke), and one Point per station. Geographic coordinates are
// [lon, lat]; planar networks emit [x, y] plus a top-level
// "crs_note": "planar-miles" marker.
std::string export_geojson(const Network& net,
                           const std::optional<Line>& new_line);

}  // namespace transit
