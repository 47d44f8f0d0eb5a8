#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "swq/aggregates.hpp"
#include "swq/core.hpp"
#include "swq/window_state.hpp"

namespace swq {

struct CellId {
  std::size_t col = 0;
  std::size_t row = 0;
  friend bool operator==(const CellId&, const CellId&) = default;
};

// Uniform grid over a dataset's bounding box. Cells are half-open except for
// the last row and column, which also take points on the max edge. The index
// keeps a pointer to the dataset, which must outlive it.
class GridIndex {
 public:
  // Default cell side targets four points per cell; the cell count is capped
  // at 16 * n. Throws UnsupportedMetric for Haversine and QueryError for a
  // non-positive cell side.
  static GridIndex build(const Dataset& ds, std::optional<double> cell_side = std::nullopt,
                         Metric metric = Metric::Planar);

  const Dataset& dataset() const { return *ds_; }
  const Rect& bbox() const { return bbox_; }
  double cell_side() const { return cell_side_; }
  std::size_t n_cols() const { return n_cols_; }
  std::size_t n_rows() const { return n_rows_; }
  std::size_t cell_count() const { return n_cols_ * n_rows_; }

  CellId cell_of(Coord c) const;
  // Point indices of a cell, ordered by (x, y, id).
  std::span<const std::size_t> cell_points(CellId cell) const;
  // Tight bounding box of the cell's points; empty for an empty cell.
  const Rect& cell_bounds(CellId cell) const { return bounds_[flat(cell)]; }

  // All points with distance(center, p) <= r, ascending.
  std::vector<std::size_t> range_query(Coord center, double r,
                                       WorkCounters* counters = nullptr) const;

  // Up to k points nearest to center, ordered by (distance, id), never
  // including `exclude`. Searches rings of cells outward from the center cell.
  std::vector<std::size_t> knn_query(Coord center, std::uint64_t k,
                                     std::optional<std::size_t> exclude = std::nullopt,
                                     WorkCounters* counters = nullptr) const;

  // Serpentine scan: rows bottom to top, columns alternating direction per
  // row, points within a cell by (x, y, id).
  std::vector<std::size_t> sweep_order() const;

 private:
  std::size_t flat(CellId c) const { return c.row * n_cols_ + c.col; }
  // Clamped column/row span overlapping [lo, hi] on one axis, padded by one.
  std::pair<std::size_t, std::size_t> col_span(double lo, double hi) const;
  std::pair<std::size_t, std::size_t> row_span(double lo, double hi) const;

  const Dataset* ds_ = nullptr;
  Rect bbox_;
  double cell_side_ = 1.0;
  std::size_t n_cols_ = 0;
  std::size_t n_rows_ = 0;
  std::vector<std::size_t> cell_start_;  // CSR offsets, cell_count() + 1
  std::vector<std::size_t> items_;
  std::vector<Rect> bounds_;
};

// Called once per sweep step. For the first point `previous` is nullopt and
// `entering` is its whole window.
using SweepObserver =
    std::function<void(std::optional<std::size_t> previous, std::size_t current,
                       std::span<const std::size_t> entering, std::span<const std::size_t> leaving)>;

struct SweepResult {
  // values[point][kind], indexed by dataset order.
  std::vector<std::vector<std::optional<double>>> values;
  WorkCounters counters;
};

// Radius-window aggregates for every point, computed by sweeping the grid and
// applying only the entering and leaving points between consecutive windows.
SweepResult sweep_execute(const GridIndex& grid, double r, std::span<const BoundAggregate> kinds,
                          const SweepObserver& observer = {});

}  // namespace swq
