#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "swq/core.hpp"
#include "swq/grid_index.hpp"
#include "swq/query/planner.hpp"

namespace swq::query {

// Test and bench hooks. on_window sees every window materialized by a
// per-point executor (ascending indices, self included); on_sweep sees every
// GridSweep step.
struct ExecutionHooks {
  std::function<void(std::size_t group, std::size_t point, std::span<const std::size_t> window)>
      on_window;
  std::function<void(std::size_t group, std::optional<std::size_t> previous, std::size_t current,
                     std::span<const std::size_t> entering, std::span<const std::size_t> leaving)>
      on_sweep;
};

struct ExecutionResult {
  ResultTable table;
  WorkCounters counters;
};

// Evaluates every window group and assembles one output row per point, in
// dataset order.
ExecutionResult execute(const QueryPlan& plan, const Dataset& ds, const ExecutionHooks& hooks = {});

// Aggregate values per point (values[point][slot]) for one group.
struct GroupResult {
  std::vector<std::vector<std::optional<double>>> values;
  WorkCounters counters;
};

GroupResult execute_group(const QueryPlan& plan, std::size_t group, const Dataset& ds,
                          const ExecutionHooks& hooks = {});

// Renders a point's location column as "POINT(x y)".
std::string location_text(Coord c);

}  // namespace swq::query
