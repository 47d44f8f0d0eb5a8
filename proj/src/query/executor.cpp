#include "swq/query/executor.hpp"

#include <algorithm>
#include <memory>

#include "swq/error.hpp"
#include "swq/io.hpp"
#include "swq/quadtree_index.hpp"

namespace swq::query {

namespace {

// Indexes are built on first use and shared by every group of one execution.
class Indexes {
 public:
  Indexes(const QueryPlan& plan, const Dataset& ds) : plan_(plan), ds_(ds) {}

  const GridIndex& grid() {
    if (!grid_) grid_ = std::make_unique<GridIndex>(GridIndex::build(ds_, plan_.options.cell_side));
    return *grid_;
  }
  const QuadtreeIndex& quadtree() {
    if (!qt_)
      qt_ = std::make_unique<QuadtreeIndex>(QuadtreeIndex::build(ds_, plan_.options.quadtree));
    return *qt_;
  }

 private:
  const QueryPlan& plan_;
  const Dataset& ds_;
  std::unique_ptr<GridIndex> grid_;
  std::unique_ptr<QuadtreeIndex> qt_;
};

std::vector<std::size_t> naive_window(const Dataset& ds, std::size_t i, const WindowSpec& w,
                                      Metric metric, WorkCounters& wc) {
  const Coord c = ds.location(i);
  std::vector<std::size_t> out;
  if (w.is_radius()) {
    for (std::size_t j = 0; j < ds.size(); ++j) {
      ++wc.points_scanned;
      ++wc.distance_computations;
      if (distance(metric, c, ds.location(j)) <= w.r()) out.push_back(j);
    }
    return out;
  }

  std::vector<std::pair<double, std::size_t>> cand;
  cand.reserve(ds.size());
  for (std::size_t j = 0; j < ds.size(); ++j) {
    if (j == i) continue;
    ++wc.points_scanned;
    ++wc.distance_computations;
    cand.emplace_back(distance(metric, c, ds.location(j)), j);
  }
  auto closer = [&](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    return ds.point(a.second).id < ds.point(b.second).id;
  };
  const std::size_t k = static_cast<std::size_t>(std::min<std::uint64_t>(w.k(), cand.size()));
  std::nth_element(cand.begin(), cand.begin() + static_cast<std::ptrdiff_t>(k), cand.end(), closer);
  for (std::size_t j = 0; j < k; ++j) out.push_back(cand[j].second);
  out.push_back(i);
  std::sort(out.begin(), out.end());
  return out;
}

GroupResult run_group(const QueryPlan& plan, std::size_t g, const Dataset& ds, Indexes& indexes,
                      const ExecutionHooks& hooks) {
  const WindowGroup& group = plan.groups[g];
  GroupResult res;
  res.values.resize(ds.size());
  WorkCounters& wc = res.counters;
  if (ds.empty()) return res;

  if (group.executor == ExecutorKind::GridSweep) {
    if (!group.window.is_radius()) throw PlanError("GridSweep only evaluates radius windows");
    SweepObserver observer;
    if (hooks.on_sweep)
      observer = [&](std::optional<std::size_t> prev, std::size_t cur,
                     std::span<const std::size_t> entering, std::span<const std::size_t> leaving) {
        hooks.on_sweep(g, prev, cur, entering, leaving);
      };
    SweepResult sweep = sweep_execute(indexes.grid(), group.window.r(), group.kinds, observer);
    res.values = std::move(sweep.values);
    res.counters = sweep.counters;
    return res;
  }

  if (group.executor == ExecutorKind::QtAnnotated) {
    if (!group.window.is_radius()) throw PlanError("QtAnnotated only evaluates radius windows");
    const QuadtreeIndex& qt = indexes.quadtree();
    for (std::size_t i = 0; i < ds.size(); ++i)
      res.values[i] = qt.aggregate_range(ds.location(i), group.window.r(), group.kinds, &wc);
    return res;
  }

  const WindowSpec& w = group.window;
  auto window_of = [&](std::size_t i) -> std::vector<std::size_t> {
    switch (group.executor) {
      case ExecutorKind::NaivePerPoint:
        return naive_window(ds, i, w, plan.metric, wc);
      case ExecutorKind::GridPerPoint: {
        const GridIndex& grid = indexes.grid();
        if (w.is_radius()) return grid.range_query(ds.location(i), w.r(), &wc);
        auto out = grid.knn_query(ds.location(i), w.k(), i, &wc);
        out.push_back(i);
        std::sort(out.begin(), out.end());
        return out;
      }
      case ExecutorKind::QtPerPoint: {
        const QuadtreeIndex& qt = indexes.quadtree();
        if (w.is_radius()) return qt.range_query(ds.location(i), w.r(), &wc);
        auto out = qt.knn_query(ds.location(i), w.k(), i, &wc);
        out.push_back(i);
        std::sort(out.begin(), out.end());
        return out;
      }
      default:
        throw InternalError("unhandled executor");
    }
  };

  WindowAggregates agg(ds, group.kinds);
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const auto window = window_of(i);
    ++wc.windows_materialized;
    if (hooks.on_window) hooks.on_window(g, i, window);
    agg.reset();
    for (std::size_t j : window) agg.add(j);
    res.values[i] = agg.finalize();
  }
  return res;
}

}  // namespace

std::string location_text(Coord c) {
  return "POINT(" + io::format_double(c.x) + " " + io::format_double(c.y) + ")";
}

GroupResult execute_group(const QueryPlan& plan, std::size_t group, const Dataset& ds,
                          const ExecutionHooks& hooks) {
  Indexes indexes(plan, ds);
  return run_group(plan, group, ds, indexes, hooks);
}

ExecutionResult execute(const QueryPlan& plan, const Dataset& ds, const ExecutionHooks& hooks) {
  ExecutionResult out;
  Indexes indexes(plan, ds);
  std::vector<GroupResult> groups;
  groups.reserve(plan.groups.size());
  for (std::size_t g = 0; g < plan.groups.size(); ++g) {
    groups.push_back(run_group(plan, g, ds, indexes, hooks));
    out.counters += groups.back().counters;
  }

  for (const auto& c : plan.columns) out.table.columns.push_back(c.name);
  out.table.rows.reserve(ds.size());
  using S = OutputColumn::Source;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    std::vector<Value> row;
    row.reserve(plan.columns.size());
    for (const auto& c : plan.columns) {
      switch (c.source) {
        case S::Id:
          row.emplace_back(ds.point(i).id);
          break;
        case S::X:
          row.emplace_back(ds.location(i).x);
          break;
        case S::Y:
          row.emplace_back(ds.location(i).y);
          break;
        case S::Location:
          row.emplace_back(location_text(ds.location(i)));
          break;
        case S::Attr:
          if (auto v = ds.value(c.attr, i))
            row.emplace_back(*v);
          else
            row.emplace_back(std::monostate{});
          break;
        case S::Analytic:
          if (auto v = groups[c.group].values[i][c.slot])
            row.emplace_back(*v);
          else
            row.emplace_back(std::monostate{});
          break;
      }
    }
    out.table.rows.push_back(std::move(row));
  }
  return out;
}

}  // namespace swq::query
