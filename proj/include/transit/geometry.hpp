#pragma once

namespace transit {

enum class CoordinateSystem {
  geographic,  // position is (x = longitude, y = latitude), degrees
  planar,      // position is (x, y), miles
};

struct Position {
  double x = 0.0;
  double y = 0.0;
};

inline constexpr double kEarthRadiusMiles = 3958.8;

// Great-circle (haversine) or Euclidean distance in miles, depending on the
// coordinate system.
double crow_fly_distance(const Position& a, const Position& b,
                         CoordinateSystem system);

// True iff s lies inside the rhombus whose long diagonal is the segment a--b
// and whose short diagonal is corridor_height * |ab|, centered at the
// midpoint. Boundary counts as inside. In geographic mode all three points
// are first projected onto a local tangent plane at the midpoint of a--b.
// Throws DegenerateGeometry when a and b coincide.
bool corridor_contains(const Position& a, const Position& b, const Position& s,
                       double corridor_height, CoordinateSystem system);

}  // namespace transit
