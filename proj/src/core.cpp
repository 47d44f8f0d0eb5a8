#include "swq/core.hpp"

#include <charconv>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

#include "swq/error.hpp"

namespace swq {

Dataset Dataset::from_points(std::vector<Point> points, std::vector<std::string> attr_names,
                             std::string id_name) {
  Dataset ds;
  ds.id_name_ = std::move(id_name);
  std::unordered_map<std::string, std::size_t> attr_pos;
  for (std::size_t a = 0; a < attr_names.size(); ++a) attr_pos.emplace(attr_names[a], a);

  ds.columns_.assign(attr_names.size(), std::vector<std::optional<double>>(points.size()));
  ds.locations_.reserve(points.size());

  std::unordered_set<std::string> seen;
  seen.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Point& p = points[i];
    if (!seen.insert(p.id).second) throw DuplicateId(p.id);
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw NonFiniteCoordinate(p.id);
    for (const auto& [name, v] : p.attrs) {
      auto it = attr_pos.find(name);
      if (it == attr_pos.end()) throw UndeclaredAttribute(p.id, name);
      ds.columns_[it->second][i] = v;
    }
    ds.locations_.push_back(p.location());
    ds.bbox_.expand(p.location());
  }
  ds.points_ = std::move(points);
  ds.attr_names_ = std::move(attr_names);
  return ds;
}

std::optional<std::size_t> Dataset::attr_index(const std::string& name) const {
  for (std::size_t a = 0; a < attr_names_.size(); ++a)
    if (attr_names_[a] == name) return a;
  return std::nullopt;
}

WindowSpec WindowSpec::knn(std::uint64_t k, std::string location) {
  return WindowSpec{KnnWindow{k}, std::move(location)};
}

WindowSpec WindowSpec::radius(double r, std::string location) {
  return WindowSpec{RadiusWindow{r}, std::move(location)};
}

void validate(const WindowSpec& spec) {
  if (spec.is_knn()) {
    if (spec.k() < 1) throw QueryError("k must be a positive integer");
  } else if (!(spec.r() >= 0.0) || !std::isfinite(spec.r())) {
    throw QueryError("radius must be a finite, nonnegative number");
  }
}

std::string frame_text(const WindowSpec& spec) {
  if (spec.is_knn())
    return std::to_string(spec.k()) + " NEAREST NEIGHBOR ON " + spec.location_attr;
  // Shortest representation that parses back to the same double.
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, spec.r());
  return "RADIUS " + std::string(buf, res.ptr) + " ON " + spec.location_attr;
}

}  // namespace swq
