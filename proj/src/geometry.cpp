#include "transit/geometry.hpp"

#include <cmath>

#include "transit/errors.hpp"

namespace transit {

namespace {

constexpr double kPi = 3.14159265358979323846;

double radians(double degrees) { return degrees * kPi / 180.0; }

double haversine_miles(const Position& a, const Position& b) {
  const double lat1 = radians(a.y);
  const double lat2 = radians(b.y);
  const double dlat = radians(b.y - a.y);
  const double dlon = radians(b.x - a.x);
  const double s1 = std::sin(dlat / 2.0);
  const double s2 = std::sin(dlon / 2.0);
  const double h = s1 * s1 + std::cos(lat1) * std::cos(lat2) * s2 * s2;
  return 2.0 * kEarthRadiusMiles * std::asin(std::sqrt(h));
}

// Local tangent-plane projection (equirectangular about the reference point).
Position project_local(const Position& p, const Position& ref) {
  const double lat0 = radians(ref.y);
  return Position{kEarthRadiusMiles * std::cos(lat0) * radians(p.x - ref.x),
                  kEarthRadiusMiles * radians(p.y - ref.y)};
}

}  // namespace

double crow_fly_distance(const Position& a, const Position& b,
                         CoordinateSystem system) {
  if (system == CoordinateSystem::geographic) {
    return haversine_miles(a, b);
  }
  return std::hypot(b.x - a.x, b.y - a.y);
}

bool corridor_contains(const Position& a, const Position& b, const Position& s,
                       double corridor_height, CoordinateSystem system) {
  Position pa = a, pb = b, ps = s;
  if (system == CoordinateSystem::geographic) {
    const Position mid{(a.x + b.x) / 2.0, (a.y + b.y) / 2.0};
    pa = project_local(a, mid);
    pb = project_local(b, mid);
    ps = project_local(s, mid);
  }

  const double dx = pb.x - pa.x;
  const double dy = pb.y - pa.y;
  const double diag = std::hypot(dx, dy);
  if (diag <= 0.0) {
    throw DegenerateGeometry("corridor endpoints coincide");
  }

  const double mx = (pa.x + pb.x) / 2.0;
  const double my = (pa.y + pb.y) / 2.0;
  const double ux = dx / diag;
  const double uy = dy / diag;
  const double rx = ps.x - mx;
  const double ry = ps.y - my;

  const double along = rx * ux + ry * uy;
  const double across = rx * -uy + ry * ux;
  const double half_long = diag / 2.0;
  const double half_short = corridor_height * diag / 2.0;

  return std::abs(along) / half_long + std::abs(across) / half_short <= 1.0;
}

}  // namespace transit
