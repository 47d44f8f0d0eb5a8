#include "swq/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "swq/error.hpp"

namespace swq {

namespace {

// Every planar distance in the engine goes through this function. Rounded
// subtraction, multiplication, addition and sqrt are all monotone, so larger
// axis offsets can never produce a smaller distance.
inline double planar(double dx, double dy) { return std::sqrt(dx * dx + dy * dy); }

double to_radians(double deg) { return deg * (std::numbers::pi / 180.0); }

void check_latitude(double lat) {
  if (!(lat >= -90.0 && lat <= 90.0)) throw LatitudeOutOfRange(lat);
}

}  // namespace

std::string_view to_string(Metric m) {
  switch (m) {
    case Metric::Planar:
      return "planar";
    case Metric::Haversine:
      return "haversine";
  }
  return "?";
}

std::string_view to_string(CircleRelation rel) {
  switch (rel) {
    case CircleRelation::Disjoint:
      return "Disjoint";
    case CircleRelation::Partial:
      return "Partial";
    case CircleRelation::Contained:
      return "Contained";
  }
  return "?";
}

double distance(Metric metric, Coord a, Coord b) {
  if (metric == Metric::Planar) return planar(std::abs(a.x - b.x), std::abs(a.y - b.y));

  check_latitude(a.y);
  check_latitude(b.y);
  const double lat1 = to_radians(a.y);
  const double lat2 = to_radians(b.y);
  const double sin_dlat = std::sin((lat2 - lat1) * 0.5);
  const double sin_dlon = std::sin(to_radians(b.x - a.x) * 0.5);
  const double h = sin_dlat * sin_dlat + std::cos(lat1) * std::cos(lat2) * sin_dlon * sin_dlon;
  return 2.0 * kEarthRadiusKm * std::asin(std::min(1.0, std::sqrt(h)));
}

double min_distance(const Rect& rect, Coord c) {
  const double dx = std::max({rect.min_x - c.x, 0.0, c.x - rect.max_x});
  const double dy = std::max({rect.min_y - c.y, 0.0, c.y - rect.max_y});
  return planar(dx, dy);
}

double max_distance(const Rect& rect, Coord c) {
  const double dx = std::max(std::abs(c.x - rect.min_x), std::abs(c.x - rect.max_x));
  const double dy = std::max(std::abs(c.y - rect.min_y), std::abs(c.y - rect.max_y));
  return planar(dx, dy);
}

CircleRelation classify_rect(Metric metric, const Rect& rect, Coord center, double r) {
  if (metric != Metric::Planar)
    throw UnsupportedMetric("rectangle classification requires the planar metric");
  if (rect.empty() || min_distance(rect, center) > r) return CircleRelation::Disjoint;
  if (max_distance(rect, center) <= r) return CircleRelation::Contained;
  return CircleRelation::Partial;
}

}  // namespace swq
