#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "swq/core.hpp"
#include "swq/quadtree_index.hpp"
#include "swq/query/ast.hpp"
#include "swq/window_state.hpp"

namespace swq::query {

enum class IndexKind { None, Grid, Quadtree };

enum class ExecutorKind {
  NaivePerPoint,  // brute-force window per point
  GridPerPoint,   // grid range / kNN query per point
  GridSweep,      // serpentine grid sweep with entering/leaving deltas
  QtAnnotated,    // quadtree node annotations for radius windows
  QtPerPoint,     // quadtree range / kNN query per point
};

std::string_view to_string(IndexKind k);
std::string_view to_string(ExecutorKind e);
// Accepts the CamelCase names and kebab-case aliases (naive, grid-sweep, ...).
std::optional<ExecutorKind> parse_executor(std::string_view name);
std::optional<IndexKind> parse_index(std::string_view name);

struct IndexOptions {
  std::optional<double> cell_side;
  QuadtreeIndex::Options quadtree;
};

// Every analytic call with the same window shares one group.
struct WindowGroup {
  WindowSpec window;
  std::vector<BoundAggregate> kinds;
  ExecutorKind executor = ExecutorKind::NaivePerPoint;
};

struct OutputColumn {
  enum class Source { Id, X, Y, Location, Attr, Analytic };
  std::string name;
  Source source = Source::Id;
  std::size_t attr = 0;   // Source::Attr
  std::size_t group = 0;  // Source::Analytic
  std::size_t slot = 0;   // index into the group's kinds
};

struct QueryPlan {
  IndexKind index = IndexKind::None;
  Metric metric = Metric::Planar;
  IndexOptions options;
  std::vector<OutputColumn> columns;
  std::vector<WindowGroup> groups;
};

// Rule table: no index -> NaivePerPoint; grid -> GridSweep for radius windows,
// GridPerPoint for kNN; quadtree -> QtAnnotated for radius windows whose
// aggregates are all single-moment, QtPerPoint otherwise.
//
// Throws UnknownColumn, UnsupportedAggregate, QueryError for invalid window
// parameters, and UnsupportedMetric for Haversine with an index.
QueryPlan plan(const QueryAST& ast, const Dataset& ds, IndexKind index,
               Metric metric = Metric::Planar, IndexOptions options = {});

// Same binding, but every group runs on `executor`. Throws PlanError when the
// executor cannot evaluate a group's window or aggregates.
QueryPlan plan_with(const QueryAST& ast, const Dataset& ds, ExecutorKind executor,
                    Metric metric = Metric::Planar, IndexOptions options = {});

IndexKind index_of(ExecutorKind e);

// Human-readable plan description.
std::string explain(const QueryPlan& plan);

}  // namespace swq::query
