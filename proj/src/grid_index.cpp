#include "swq/grid_index.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "swq/error.hpp"

namespace swq {

namespace {

std::size_t axis_cells(double extent, double side) {
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(extent / side)));
}

// floor((v - origin) / side) clamped to [0, count - 1], safe for huge or
// negative offsets.
std::size_t clamp_index(double v, double origin, double side, std::size_t count) {
  const double f = std::floor((v - origin) / side);
  if (!(f > 0.0)) return 0;
  if (f >= static_cast<double>(count - 1)) return count - 1;
  return static_cast<std::size_t>(f);
}

double default_cell_side(const Rect& bbox, std::size_t n) {
  const double w = bbox.width(), h = bbox.height();
  if (w > 0.0 && h > 0.0) return std::sqrt(4.0 * w * h / static_cast<double>(n));
  if (w > 0.0 || h > 0.0) return std::max(w, h) * 4.0 / static_cast<double>(n);
  return 1.0;
}

}  // namespace

GridIndex GridIndex::build(const Dataset& ds, std::optional<double> cell_side, Metric metric) {
  if (metric != Metric::Planar) throw UnsupportedMetric("the grid index requires the planar metric");
  if (cell_side && !(*cell_side > 0.0 && std::isfinite(*cell_side)))
    throw QueryError("grid cell side must be a positive number");

  GridIndex g;
  g.ds_ = &ds;
  g.bbox_ = ds.bbox();
  const std::size_t n = ds.size();
  if (n == 0) {
    g.cell_start_.assign(1, 0);
    return g;
  }

  double side = cell_side.value_or(default_cell_side(g.bbox_, n));
  const std::size_t max_cells = 16 * n;
  while (axis_cells(g.bbox_.width(), side) * axis_cells(g.bbox_.height(), side) > max_cells)
    side *= 1.25;
  g.cell_side_ = side;
  g.n_cols_ = axis_cells(g.bbox_.width(), side);
  g.n_rows_ = axis_cells(g.bbox_.height(), side);

  const std::size_t cells = g.cell_count();
  std::vector<std::size_t> cell_of_point(n);
  g.cell_start_.assign(cells + 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    cell_of_point[i] = g.flat(g.cell_of(ds.location(i)));
    ++g.cell_start_[cell_of_point[i] + 1];
  }
  for (std::size_t c = 0; c < cells; ++c) g.cell_start_[c + 1] += g.cell_start_[c];

  g.items_.resize(n);
  std::vector<std::size_t> fill(g.cell_start_.begin(), g.cell_start_.end() - 1);
  for (std::size_t i = 0; i < n; ++i) g.items_[fill[cell_of_point[i]]++] = i;

  g.bounds_.assign(cells, Rect{});
  for (std::size_t c = 0; c < cells; ++c) {
    auto first = g.items_.begin() + static_cast<std::ptrdiff_t>(g.cell_start_[c]);
    auto last = g.items_.begin() + static_cast<std::ptrdiff_t>(g.cell_start_[c + 1]);
    std::sort(first, last, [&](std::size_t a, std::size_t b) {
      const Point& pa = ds.point(a);
      const Point& pb = ds.point(b);
      if (pa.x != pb.x) return pa.x < pb.x;
      if (pa.y != pb.y) return pa.y < pb.y;
      return pa.id < pb.id;
    });
    for (auto it = first; it != last; ++it) g.bounds_[c].expand(ds.location(*it));
  }
  return g;
}

CellId GridIndex::cell_of(Coord c) const {
  return {clamp_index(c.x, bbox_.min_x, cell_side_, n_cols_),
          clamp_index(c.y, bbox_.min_y, cell_side_, n_rows_)};
}

std::span<const std::size_t> GridIndex::cell_points(CellId cell) const {
  const std::size_t f = flat(cell);
  return std::span<const std::size_t>(items_).subspan(cell_start_[f],
                                                      cell_start_[f + 1] - cell_start_[f]);
}

std::pair<std::size_t, std::size_t> GridIndex::col_span(double lo, double hi) const {
  std::size_t a = clamp_index(lo, bbox_.min_x, cell_side_, n_cols_);
  std::size_t b = clamp_index(hi, bbox_.min_x, cell_side_, n_cols_);
  return {a == 0 ? 0 : a - 1, std::min(b + 1, n_cols_ - 1)};
}

std::pair<std::size_t, std::size_t> GridIndex::row_span(double lo, double hi) const {
  std::size_t a = clamp_index(lo, bbox_.min_y, cell_side_, n_rows_);
  std::size_t b = clamp_index(hi, bbox_.min_y, cell_side_, n_rows_);
  return {a == 0 ? 0 : a - 1, std::min(b + 1, n_rows_ - 1)};
}

std::vector<std::size_t> GridIndex::range_query(Coord center, double r,
                                                WorkCounters* counters) const {
  WorkCounters local;
  WorkCounters& wc = counters ? *counters : local;
  std::vector<std::size_t> out;
  if (cell_count() == 0) return out;

  const auto [c0, c1] = col_span(center.x - r, center.x + r);
  const auto [r0, r1] = row_span(center.y - r, center.y + r);
  for (std::size_t row = r0; row <= r1; ++row) {
    for (std::size_t col = c0; col <= c1; ++col) {
      const CellId cell{col, row};
      const auto pts = cell_points(cell);
      if (pts.empty()) continue;
      ++wc.cells_visited;
      switch (classify_rect(Metric::Planar, cell_bounds(cell), center, r)) {
        case CircleRelation::Disjoint:
          break;
        case CircleRelation::Contained:
          wc.points_scanned += pts.size();
          out.insert(out.end(), pts.begin(), pts.end());
          break;
        case CircleRelation::Partial:
          for (std::size_t i : pts) {
            ++wc.points_scanned;
            ++wc.distance_computations;
            if (distance(Metric::Planar, center, ds_->location(i)) <= r) out.push_back(i);
          }
          break;
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::size_t> GridIndex::knn_query(Coord center, std::uint64_t k,
                                              std::optional<std::size_t> exclude,
                                              WorkCounters* counters) const {
  WorkCounters local;
  WorkCounters& wc = counters ? *counters : local;
  if (cell_count() == 0 || k == 0) return {};

  using Entry = std::pair<double, std::size_t>;
  auto closer = [&](const Entry& a, const Entry& b) {
    if (a.first != b.first) return a.first < b.first;
    return ds_->point(a.second).id < ds_->point(b.second).id;
  };
  std::vector<Entry> best;  // max-heap on (distance, id): front is the worst kept
  auto full = [&] { return best.size() >= k; };

  auto scan_cell = [&](CellId cell) {
    const auto pts = cell_points(cell);
    if (pts.empty()) return;
    ++wc.cells_visited;
    if (full() && min_distance(cell_bounds(cell), center) > best.front().first) return;
    for (std::size_t i : pts) {
      if (i == exclude) continue;
      ++wc.points_scanned;
      ++wc.distance_computations;
      Entry e{distance(Metric::Planar, center, ds_->location(i)), i};
      if (!full()) {
        best.push_back(e);
        std::push_heap(best.begin(), best.end(), closer);
      } else if (closer(e, best.front())) {
        std::pop_heap(best.begin(), best.end(), closer);
        best.back() = e;
        std::push_heap(best.begin(), best.end(), closer);
      }
    }
  };

  const CellId home = cell_of(center);
  const auto cc = static_cast<std::ptrdiff_t>(home.col);
  const auto cr = static_cast<std::ptrdiff_t>(home.row);
  const auto cols = static_cast<std::ptrdiff_t>(n_cols_);
  const auto rows = static_cast<std::ptrdiff_t>(n_rows_);
  const std::ptrdiff_t max_ring = std::max({cc, cols - 1 - cc, cr, rows - 1 - cr});
  // Cell boundaries are nominal; points may sit an ulp across one.
  const double slack = cell_side_ * 1e-6;
  constexpr double inf = std::numeric_limits<double>::infinity();

  for (std::ptrdiff_t ring = 0; ring <= max_ring; ++ring) {
    if (ring > 0 && full()) {
      // Every unvisited cell lies outside the (2 ring - 1)^2 block around home.
      const double left = cc - ring >= 0
                              ? center.x - (bbox_.min_x + static_cast<double>(cc - ring + 1) * cell_side_)
                              : inf;
      const double right = cc + ring < cols
                               ? (bbox_.min_x + static_cast<double>(cc + ring) * cell_side_) - center.x
                               : inf;
      const double down = cr - ring >= 0
                              ? center.y - (bbox_.min_y + static_cast<double>(cr - ring + 1) * cell_side_)
                              : inf;
      const double up = cr + ring < rows
                            ? (bbox_.min_y + static_cast<double>(cr + ring) * cell_side_) - center.y
                            : inf;
      const double bound = std::min({left, right, down, up}) - slack;
      if (bound > best.front().first) break;
    }
    for (std::ptrdiff_t row = cr - ring; row <= cr + ring; ++row) {
      if (row < 0 || row >= rows) continue;
      const bool edge_row = row == cr - ring || row == cr + ring;
      const std::ptrdiff_t step = edge_row ? 1 : 2 * ring;
      for (std::ptrdiff_t col = cc - ring; col <= cc + ring; col += step) {
        if (col >= 0 && col < cols)
          scan_cell({static_cast<std::size_t>(col), static_cast<std::size_t>(row)});
        if (step == 0) break;
      }
    }
  }

  std::sort(best.begin(), best.end(), closer);
  std::vector<std::size_t> out;
  out.reserve(best.size());
  for (const auto& e : best) out.push_back(e.second);
  return out;
}

std::vector<std::size_t> GridIndex::sweep_order() const {
  std::vector<std::size_t> order;
  order.reserve(items_.size());
  for (std::size_t row = 0; row < n_rows_; ++row) {
    for (std::size_t j = 0; j < n_cols_; ++j) {
      const std::size_t col = row % 2 == 0 ? j : n_cols_ - 1 - j;
      const auto pts = cell_points({col, row});
      order.insert(order.end(), pts.begin(), pts.end());
    }
  }
  return order;
}

SweepResult sweep_execute(const GridIndex& grid, double r, std::span<const BoundAggregate> kinds,
                          const SweepObserver& observer) {
  const Dataset& ds = grid.dataset();
  SweepResult result;
  result.values.resize(ds.size());
  if (ds.empty()) return result;

  WorkCounters& wc = result.counters;
  WindowAggregates agg(ds, kinds);
  std::vector<char> in_window(ds.size(), 0);
  std::vector<std::size_t> stamp(grid.cell_count(), 0);
  std::vector<std::size_t> entering, leaving;

  const auto order = grid.sweep_order();
  std::optional<std::size_t> prev;
  std::size_t step = 0;
  for (std::size_t cur : order) {
    ++step;
    const Coord q = ds.location(cur);
    entering.clear();
    leaving.clear();

    if (!prev) {
      entering = grid.range_query(q, r, &wc);
      ++wc.windows_materialized;
    } else {
      const Coord p = ds.location(*prev);
      // Cells near either disk, each visited once per step.
      auto visit_disk_cells = [&](Coord c) {
        const CellId lo = grid.cell_of({c.x - r, c.y - r});
        const CellId hi = grid.cell_of({c.x + r, c.y + r});
        const std::size_t c0 = lo.col == 0 ? 0 : lo.col - 1;
        const std::size_t r0 = lo.row == 0 ? 0 : lo.row - 1;
        const std::size_t c1 = std::min(hi.col + 1, grid.n_cols() - 1);
        const std::size_t r1 = std::min(hi.row + 1, grid.n_rows() - 1);
        for (std::size_t row = r0; row <= r1; ++row) {
          for (std::size_t col = c0; col <= c1; ++col) {
            const CellId cell{col, row};
            const std::size_t f = row * grid.n_cols() + col;
            if (stamp[f] == step) continue;
            stamp[f] = step;
            const auto pts = grid.cell_points(cell);
            if (pts.empty()) continue;
            ++wc.cells_visited;
            const Rect& b = grid.cell_bounds(cell);
            const auto rel_p = classify_rect(Metric::Planar, b, p, r);
            const auto rel_q = classify_rect(Metric::Planar, b, q, r);
            if (rel_p == rel_q && rel_p != CircleRelation::Partial) continue;
            for (std::size_t i : pts) {
              ++wc.points_scanned;
              auto inside = [&](CircleRelation rel, Coord c) {
                if (rel != CircleRelation::Partial) return rel == CircleRelation::Contained;
                ++wc.distance_computations;
                return distance(Metric::Planar, c, ds.location(i)) <= r;
              };
              const bool in_p = inside(rel_p, p);
              const bool in_q = inside(rel_q, q);
              if (in_p && !in_q) leaving.push_back(i);
              if (in_q && !in_p) entering.push_back(i);
            }
          }
        }
      };
      visit_disk_cells(p);
      visit_disk_cells(q);
    }

    try {
      for (std::size_t i : leaving) {
        if (!in_window[i]) throw NegativeCount("point '" + ds.point(i).id + "' left a window it was never in");
        in_window[i] = 0;
        agg.remove(i);
      }
      for (std::size_t i : entering) {
        if (in_window[i]) throw InternalError("point '" + ds.point(i).id + "' entered a window twice");
        in_window[i] = 1;
        agg.add(i);
      }
    } catch (const InternalError& e) {
      throw InternalError(std::string(e.what()) + " (sweep step from '" +
                          (prev ? ds.point(*prev).id : std::string("<start>")) + "' to '" +
                          ds.point(cur).id + "')");
    }

    if (observer) observer(prev, cur, entering, leaving);
    result.values[cur] = agg.finalize();
    prev = cur;
  }
  return result;
}

}  // namespace swq
