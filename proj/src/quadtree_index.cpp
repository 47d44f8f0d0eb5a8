#include "swq/quadtree_index.hpp"

#include <algorithm>
#include <queue>

#include "swq/error.hpp"

namespace swq {

QuadtreeIndex QuadtreeIndex::build(const Dataset& ds, Options options, Metric metric) {
  if (metric != Metric::Planar)
    throw UnsupportedMetric("the quadtree index requires the planar metric");
  if (options.leaf_capacity == 0) throw QueryError("quadtree leaf capacity must be positive");
  if (options.max_depth == 0) throw QueryError("quadtree max depth must be positive");

  QuadtreeIndex qt;
  qt.ds_ = &ds;
  qt.options_ = options;
  qt.n_attrs_ = ds.attr_names().size();
  if (ds.empty()) return qt;

  qt.perm_.resize(ds.size());
  for (std::size_t i = 0; i < ds.size(); ++i) qt.perm_[i] = i;
  qt.build_node(ds.bbox(), 0, ds.size(), 0);
  qt.annotations_.assign(qt.nodes_.size() * qt.n_attrs_, Moments{});
  qt.annotate(0);
  return qt;
}

std::int32_t QuadtreeIndex::build_node(Rect extent, std::size_t begin, std::size_t end,
                                       std::uint32_t depth) {
  const auto id = static_cast<std::int32_t>(nodes_.size());
  Rect bounds;
  for (std::size_t k = begin; k < end; ++k) bounds.expand(ds_->location(perm_[k]));
  nodes_.push_back(
      Node{extent, bounds, {kNoChild, kNoChild, kNoChild, kNoChild}, begin, end, depth, true});
  if (end - begin <= options_.leaf_capacity || depth >= options_.max_depth) return id;

  const double mid_x = extent.min_x + (extent.max_x - extent.min_x) * 0.5;
  const double mid_y = extent.min_y + (extent.max_y - extent.min_y) * 0.5;
  auto quadrant = [&](std::size_t i) {
    const Coord c = ds_->location(i);
    const bool east = c.x >= mid_x;
    const bool north = c.y >= mid_y;
    return north ? (east ? NE : NW) : (east ? SE : SW);
  };

  // Stable bucket of [begin, end) into NW, NE, SW, SE order.
  std::array<std::vector<std::size_t>, 4> buckets;
  for (std::size_t k = begin; k < end; ++k) buckets[quadrant(perm_[k])].push_back(perm_[k]);
  const std::array<Rect, 4> extents{{
      {extent.min_x, mid_y, mid_x, extent.max_y},  // NW
      {mid_x, mid_y, extent.max_x, extent.max_y},  // NE
      {extent.min_x, extent.min_y, mid_x, mid_y},  // SW
      {mid_x, extent.min_y, extent.max_x, mid_y},  // SE
  }};

  nodes_[id].leaf = false;
  std::size_t pos = begin;
  for (int q = 0; q < 4; ++q) {
    const std::size_t child_begin = pos;
    for (std::size_t i : buckets[q]) perm_[pos++] = i;
    if (pos == child_begin) continue;
    const auto child = build_node(extents[q], child_begin, pos, depth + 1);
    nodes_[id].children[q] = child;
  }
  return id;
}

void QuadtreeIndex::annotate(std::size_t node_id) {
  const Node& n = nodes_[node_id];
  Moments* ann = annotations_.data() + node_id * n_attrs_;
  if (n.leaf) {
    for (std::size_t a = 0; a < n_attrs_; ++a) {
      Moments m;
      m.rows = static_cast<std::int64_t>(n.size());
      for (std::size_t i : points(n))
        if (auto v = ds_->value(a, i)) m.add_value(*v);
      ann[a] = m;
    }
    return;
  }
  for (std::int32_t child : n.children) {
    if (child == kNoChild) continue;
    annotate(static_cast<std::size_t>(child));
    for (std::size_t a = 0; a < n_attrs_; ++a) ann[a] += annotation(static_cast<std::size_t>(child), a);
  }
}

std::vector<std::size_t> QuadtreeIndex::range_query(Coord center, double r,
                                                    WorkCounters* counters) const {
  WorkCounters local;
  WorkCounters& wc = counters ? *counters : local;
  std::vector<std::size_t> out;
  if (empty()) return out;

  std::vector<std::size_t> stack{0};
  while (!stack.empty()) {
    const Node& n = nodes_[stack.back()];
    stack.pop_back();
    ++wc.nodes_visited;
    switch (classify_rect(Metric::Planar, n.bounds, center, r)) {
      case CircleRelation::Disjoint:
        break;
      case CircleRelation::Contained: {
        const auto pts = points(n);
        wc.points_scanned += pts.size();
        out.insert(out.end(), pts.begin(), pts.end());
        break;
      }
      case CircleRelation::Partial:
        if (n.leaf) {
          for (std::size_t i : points(n)) {
            ++wc.points_scanned;
            ++wc.distance_computations;
            if (distance(Metric::Planar, center, ds_->location(i)) <= r) out.push_back(i);
          }
        } else {
          for (std::int32_t c : n.children)
            if (c != kNoChild) stack.push_back(static_cast<std::size_t>(c));
        }
        break;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::size_t> QuadtreeIndex::knn_query(Coord center, std::uint64_t k,
                                                  std::optional<std::size_t> exclude,
                                                  WorkCounters* counters) const {
  WorkCounters local;
  WorkCounters& wc = counters ? *counters : local;
  std::vector<std::size_t> out;
  if (empty() || k == 0) return out;

  struct Item {
    double key;
    bool is_point;  // nodes pop before points at equal key
    std::size_t ref;
  };
  auto after = [&](const Item& a, const Item& b) {
    if (a.key != b.key) return a.key > b.key;
    if (a.is_point != b.is_point) return a.is_point;
    if (!a.is_point) return a.ref > b.ref;
    return ds_->point(a.ref).id > ds_->point(b.ref).id;
  };
  std::priority_queue<Item, std::vector<Item>, decltype(after)> queue(after);
  queue.push({min_distance(root().bounds, center), false, 0});

  while (!queue.empty() && out.size() < k) {
    const Item top = queue.top();
    queue.pop();
    if (top.is_point) {
      out.push_back(top.ref);
      continue;
    }
    const Node& n = nodes_[top.ref];
    ++wc.nodes_visited;
    if (n.leaf) {
      for (std::size_t i : points(n)) {
        if (i == exclude) continue;
        ++wc.points_scanned;
        ++wc.distance_computations;
        queue.push({distance(Metric::Planar, center, ds_->location(i)), true, i});
      }
    } else {
      for (std::int32_t c : n.children)
        if (c != kNoChild)
          queue.push({min_distance(nodes_[c].bounds, center), false, static_cast<std::size_t>(c)});
    }
  }
  return out;
}

std::vector<std::optional<double>> QuadtreeIndex::aggregate_range(
    Coord center, double r, std::span<const BoundAggregate> kinds, WorkCounters* counters) const {
  for (const auto& b : kinds)
    if (!is_single_moment(b.kind.func))
      throw UnsupportedAggregate(b.kind.call_text() + " has no node annotation fast path");

  WorkCounters local;
  WorkCounters& wc = counters ? *counters : local;
  WindowAggregates agg(*ds_, kinds);
  if (empty()) return agg.finalize();

  std::vector<std::size_t> stack{0};
  while (!stack.empty()) {
    const std::size_t id = stack.back();
    stack.pop_back();
    const Node& n = nodes_[id];
    ++wc.nodes_visited;
    switch (classify_rect(Metric::Planar, n.bounds, center, r)) {
      case CircleRelation::Disjoint:
        break;
      case CircleRelation::Contained:
        for (std::size_t k = 0; k < kinds.size(); ++k) {
          if (kinds[k].attr_a) {
            agg.add_moments(k, annotation(id, *kinds[k].attr_a));
          } else {
            Moments rows_only;
            rows_only.rows = static_cast<std::int64_t>(n.size());
            agg.add_moments(k, rows_only);
          }
        }
        break;
      case CircleRelation::Partial:
        if (n.leaf) {
          for (std::size_t i : points(n)) {
            ++wc.points_scanned;
            ++wc.distance_computations;
            if (distance(Metric::Planar, center, ds_->location(i)) <= r) agg.add(i);
          }
        } else {
          for (std::int32_t c : n.children)
            if (c != kNoChild) stack.push_back(static_cast<std::size_t>(c));
        }
        break;
    }
  }
  return agg.finalize();
}

std::optional<double> QuadtreeIndex::aggregate_range(Coord center, double r,
                                                     const BoundAggregate& kind,
                                                     WorkCounters* counters) const {
  return aggregate_range(center, r, std::span<const BoundAggregate>(&kind, 1), counters).front();
}

}  // namespace swq
