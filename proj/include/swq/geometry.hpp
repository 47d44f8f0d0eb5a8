#pragma once

#include <limits>
#include <string_view>

namespace swq {

struct Coord {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Coord&, const Coord&) = default;
};

// Axis-aligned rectangle, closed on every side. The default value is the
// empty rectangle (min > max), which expand() turns into a real extent.
struct Rect {
  double min_x = std::numeric_limits<double>::infinity();
  double min_y = std::numeric_limits<double>::infinity();
  double max_x = -std::numeric_limits<double>::infinity();
  double max_y = -std::numeric_limits<double>::infinity();

  bool empty() const { return min_x > max_x || min_y > max_y; }
  double width() const { return empty() ? 0.0 : max_x - min_x; }
  double height() const { return empty() ? 0.0 : max_y - min_y; }
  double area() const { return width() * height(); }

  bool contains(Coord c) const {
    return c.x >= min_x && c.x <= max_x && c.y >= min_y && c.y <= max_y;
  }

  void expand(Coord c) {
    if (c.x < min_x) min_x = c.x;
    if (c.x > max_x) max_x = c.x;
    if (c.y < min_y) min_y = c.y;
    if (c.y > max_y) max_y = c.y;
  }

  friend bool operator==(const Rect&, const Rect&) = default;
};

enum class Metric {
  Planar,     // Euclidean on raw coordinates
  Haversine,  // great circle, x = longitude and y = latitude in degrees
};

inline constexpr double kEarthRadiusKm = 6371.0088;

std::string_view to_string(Metric m);

// Relation of a rectangle to the closed disk {p : distance(center, p) <= r}.
enum class CircleRelation { Disjoint, Partial, Contained };

std::string_view to_string(CircleRelation rel);

// Throws LatitudeOutOfRange for Haversine when |y| > 90.
double distance(Metric metric, Coord a, Coord b);

// Planar distance from c to the nearest / farthest point of a non-empty rect.
// Computed with the same arithmetic as distance() so that, for any point q
// inside rect, min_distance <= distance(c, q) <= max_distance holds exactly.
double min_distance(const Rect& rect, Coord c);
double max_distance(const Rect& rect, Coord c);

// Planar only; throws UnsupportedMetric for Haversine.
CircleRelation classify_rect(Metric metric, const Rect& rect, Coord center, double r);

}  // namespace swq
