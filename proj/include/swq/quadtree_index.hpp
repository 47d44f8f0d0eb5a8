#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "swq/aggregates.hpp"
#include "swq/core.hpp"
#include "swq/window_state.hpp"

namespace swq {

// Point-region quadtree over a dataset's bounding box. Every node covers a
// contiguous range of a point permutation and carries per-attribute moment
// annotations, so a node lying fully inside a query disk can be aggregated
// without visiting its points.
//
// Queries classify against each node's tight point box rather than its
// extent, so more nodes are found fully inside a disk.
//
// Splitting is half-open: a point goes east when x >= mid_x and north when
// y >= mid_y, so points on the bbox max edges stay inside their leaf's extent.
class QuadtreeIndex {
 public:
  static constexpr std::int32_t kNoChild = -1;
  enum Quadrant { NW = 0, NE = 1, SW = 2, SE = 3 };

  struct Node {
    Rect extent;
    Rect bounds;  // tight box of the node's points; used for classification
    std::array<std::int32_t, 4> children{kNoChild, kNoChild, kNoChild, kNoChild};
    std::size_t begin = 0;  // range into points()
    std::size_t end = 0;
    std::uint32_t depth = 0;
    bool leaf = true;

    std::size_t size() const { return end - begin; }
  };

  struct Options {
    std::size_t leaf_capacity = 8;
    std::uint32_t max_depth = 32;
  };

  // Throws UnsupportedMetric for Haversine, QueryError for zero capacity/depth.
  static QuadtreeIndex build(const Dataset& ds, Options options, Metric metric = Metric::Planar);
  static QuadtreeIndex build(const Dataset& ds) { return build(ds, Options{}); }

  const Dataset& dataset() const { return *ds_; }
  const Options& options() const { return options_; }
  bool empty() const { return nodes_.empty(); }
  std::size_t node_count() const { return nodes_.size(); }
  const Node& root() const { return nodes_.front(); }
  const Node& node(std::size_t id) const { return nodes_[id]; }
  std::span<const std::size_t> points(const Node& n) const {
    return std::span<const std::size_t>(perm_).subspan(n.begin, n.size());
  }

  // Moments of attribute `attr` (dataset attr index) over a node's points.
  const Moments& annotation(std::size_t node_id, std::size_t attr) const {
    return annotations_[node_id * n_attrs_ + attr];
  }

  std::vector<std::size_t> range_query(Coord center, double r,
                                       WorkCounters* counters = nullptr) const;

  // Best-first search keyed by (min distance, node id); result ordered by
  // (distance, id) and never containing `exclude`.
  std::vector<std::size_t> knn_query(Coord center, std::uint64_t k,
                                     std::optional<std::size_t> exclude = std::nullopt,
                                     WorkCounters* counters = nullptr) const;

  // Radius-window aggregates for single-moment kinds. Contained nodes
  // contribute their annotations; only partial leaves are scanned point by
  // point. Throws UnsupportedAggregate for pairwise kinds.
  std::vector<std::optional<double>> aggregate_range(Coord center, double r,
                                                     std::span<const BoundAggregate> kinds,
                                                     WorkCounters* counters = nullptr) const;
  std::optional<double> aggregate_range(Coord center, double r, const BoundAggregate& kind,
                                        WorkCounters* counters = nullptr) const;

 private:
  std::int32_t build_node(Rect extent, std::size_t begin, std::size_t end, std::uint32_t depth);
  void annotate(std::size_t node_id);

  const Dataset* ds_ = nullptr;
  Options options_;
  std::vector<Node> nodes_;
  std::vector<std::size_t> perm_;
  std::size_t n_attrs_ = 0;
  std::vector<Moments> annotations_;
};

}  // namespace swq
