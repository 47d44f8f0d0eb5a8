#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "swq/geometry.hpp"

namespace swq {

// One spatial record. Attribute values may be missing (SQL NULL).
struct Point {
  std::string id;
  double x = 0.0;
  double y = 0.0;
  std::map<std::string, std::optional<double>> attrs;

  Coord location() const { return {x, y}; }
};

// Immutable, input-ordered collection of points. Attribute values are kept
// column-wise, aligned with attr_names().
class Dataset {
 public:
  Dataset() = default;

  // Throws DuplicateId, NonFiniteCoordinate or UndeclaredAttribute.
  // `id_name` is the column name under which queries can select the id.
  static Dataset from_points(std::vector<Point> points, std::vector<std::string> attr_names,
                             std::string id_name = "id");

  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }

  const std::vector<Point>& points() const { return points_; }
  const Point& point(std::size_t i) const { return points_[i]; }
  Coord location(std::size_t i) const { return locations_[i]; }
  std::span<const Coord> locations() const { return locations_; }

  const Rect& bbox() const { return bbox_; }
  const std::vector<std::string>& attr_names() const { return attr_names_; }
  const std::string& id_name() const { return id_name_; }

  std::optional<std::size_t> attr_index(const std::string& name) const;
  std::span<const std::optional<double>> column(std::size_t attr) const { return columns_[attr]; }
  std::optional<double> value(std::size_t attr, std::size_t point) const {
    return columns_[attr][point];
  }

 private:
  std::vector<Point> points_;
  std::vector<Coord> locations_;
  std::vector<std::string> attr_names_;
  std::string id_name_ = "id";
  std::vector<std::vector<std::optional<double>>> columns_;
  Rect bbox_;
};

// Name of the location attribute; it is always the point coordinates.
inline constexpr const char* kLocationAttr = "location";

struct KnnWindow {
  std::uint64_t k = 1;
  friend bool operator==(const KnnWindow&, const KnnWindow&) = default;
};

struct RadiusWindow {
  double r = 0.0;
  friend bool operator==(const RadiusWindow&, const RadiusWindow&) = default;
};

// The spatial frame of an OVER clause.
struct WindowSpec {
  std::variant<KnnWindow, RadiusWindow> frame;
  std::string location_attr = "location";

  bool is_knn() const { return std::holds_alternative<KnnWindow>(frame); }
  bool is_radius() const { return std::holds_alternative<RadiusWindow>(frame); }
  std::uint64_t k() const { return std::get<KnnWindow>(frame).k; }
  double r() const { return std::get<RadiusWindow>(frame).r; }

  static WindowSpec knn(std::uint64_t k, std::string location = "location");
  static WindowSpec radius(double r, std::string location = "location");

  friend bool operator==(const WindowSpec&, const WindowSpec&) = default;
};

// Throws QueryError when k < 1 or r is negative or non-finite.
void validate(const WindowSpec& spec);

// Canonical frame text, e.g. "RADIUS 2.5 ON location".
std::string frame_text(const WindowSpec& spec);

using Value = std::variant<std::monostate, std::string, double>;

inline bool is_null(const Value& v) { return std::holds_alternative<std::monostate>(v); }

struct ResultTable {
  std::vector<std::string> columns;
  std::vector<std::vector<Value>> rows;
};

struct WorkCounters {
  std::uint64_t distance_computations = 0;
  std::uint64_t points_scanned = 0;
  std::uint64_t nodes_visited = 0;
  std::uint64_t cells_visited = 0;
  std::uint64_t windows_materialized = 0;

  WorkCounters& operator+=(const WorkCounters& o) {
    distance_computations += o.distance_computations;
    points_scanned += o.points_scanned;
    nodes_visited += o.nodes_visited;
    cells_visited += o.cells_visited;
    windows_materialized += o.windows_materialized;
    return *this;
  }

  friend bool operator==(const WorkCounters&, const WorkCounters&) = default;
};

}  // namespace swq
