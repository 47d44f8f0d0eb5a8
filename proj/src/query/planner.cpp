#include "swq/query/planner.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <sstream>

#include "swq/error.hpp"

namespace swq::query {

namespace {

struct ExecutorName {
  ExecutorKind kind;
  std::string_view name;
  std::string_view alias;
};

constexpr std::array<ExecutorName, 5> kExecutors{{
    {ExecutorKind::NaivePerPoint, "NaivePerPoint", "naive"},
    {ExecutorKind::GridPerPoint, "GridPerPoint", "grid-per-point"},
    {ExecutorKind::GridSweep, "GridSweep", "grid-sweep"},
    {ExecutorKind::QtAnnotated, "QtAnnotated", "qt-annotated"},
    {ExecutorKind::QtPerPoint, "QtPerPoint", "qt-per-point"},
}};

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) ==
                  std::tolower(static_cast<unsigned char>(y));
         });
}

bool all_single_moment(const WindowGroup& g) {
  return std::all_of(g.kinds.begin(), g.kinds.end(),
                     [](const BoundAggregate& b) { return is_single_moment(b.kind.func); });
}

ExecutorKind choose(IndexKind index, const WindowGroup& g) {
  switch (index) {
    case IndexKind::None:
      return ExecutorKind::NaivePerPoint;
    case IndexKind::Grid:
      return g.window.is_radius() ? ExecutorKind::GridSweep : ExecutorKind::GridPerPoint;
    case IndexKind::Quadtree:
      return g.window.is_radius() && all_single_moment(g) ? ExecutorKind::QtAnnotated
                                                          : ExecutorKind::QtPerPoint;
  }
  return ExecutorKind::NaivePerPoint;
}

// Resolves columns and groups analytic calls by window. Executors are left
// at their defaults.
QueryPlan bind(const QueryAST& ast, const Dataset& ds, Metric metric, IndexOptions options) {
  QueryPlan plan;
  plan.metric = metric;
  plan.options = options;
  if (ast.select_items.empty()) throw QueryError("empty select list");

  for (const auto& item : ast.select_items) {
    OutputColumn col;
    if (const auto* ref = std::get_if<ColumnRef>(&item)) {
      col.name = ref->name;
      using S = OutputColumn::Source;
      if (ref->name == "id" || ref->name == ds.id_name()) {
        col.source = S::Id;
      } else if (ref->name == "x") {
        col.source = S::X;
      } else if (ref->name == "y") {
        col.source = S::Y;
      } else if (ref->name == kLocationAttr) {
        col.source = S::Location;
      } else if (auto a = ds.attr_index(ref->name)) {
        col.source = S::Attr;
        col.attr = *a;
      } else {
        throw UnknownColumn(ref->name);
      }
    } else {
      const auto& call = std::get<AnalyticCall>(item);
      if (call.window.location_attr != kLocationAttr) throw UnknownColumn(call.window.location_attr);
      validate(call.window);
      BoundAggregate bound = swq::bind(call.kind, ds);

      auto it = std::find_if(plan.groups.begin(), plan.groups.end(),
                             [&](const WindowGroup& g) { return g.window == call.window; });
      if (it == plan.groups.end()) {
        plan.groups.push_back(WindowGroup{call.window, {}, ExecutorKind::NaivePerPoint});
        it = plan.groups.end() - 1;
      }
      col.name = call.label.empty() ? call.kind.call_text() + " OVER (" + frame_text(call.window) + ")"
                                    : call.label;
      col.source = OutputColumn::Source::Analytic;
      col.group = static_cast<std::size_t>(it - plan.groups.begin());
      col.slot = it->kinds.size();
      it->kinds.push_back(std::move(bound));
    }
    plan.columns.push_back(std::move(col));
  }
  return plan;
}

void check_metric(IndexKind index, Metric metric) {
  if (index != IndexKind::None && metric != Metric::Planar)
    throw UnsupportedMetric("the haversine metric is only supported without an index (--index none)");
}

}  // namespace

std::string_view to_string(IndexKind k) {
  switch (k) {
    case IndexKind::None:
      return "none";
    case IndexKind::Grid:
      return "grid";
    case IndexKind::Quadtree:
      return "quadtree";
  }
  return "?";
}

std::string_view to_string(ExecutorKind e) {
  for (const auto& n : kExecutors)
    if (n.kind == e) return n.name;
  return "?";
}

std::optional<ExecutorKind> parse_executor(std::string_view name) {
  for (const auto& n : kExecutors)
    if (iequals(n.name, name) || iequals(n.alias, name)) return n.kind;
  return std::nullopt;
}

std::optional<IndexKind> parse_index(std::string_view name) {
  for (IndexKind k : {IndexKind::None, IndexKind::Grid, IndexKind::Quadtree})
    if (iequals(to_string(k), name)) return k;
  return std::nullopt;
}

IndexKind index_of(ExecutorKind e) {
  switch (e) {
    case ExecutorKind::NaivePerPoint:
      return IndexKind::None;
    case ExecutorKind::GridPerPoint:
    case ExecutorKind::GridSweep:
      return IndexKind::Grid;
    case ExecutorKind::QtAnnotated:
    case ExecutorKind::QtPerPoint:
      return IndexKind::Quadtree;
  }
  return IndexKind::None;
}

QueryPlan plan(const QueryAST& ast, const Dataset& ds, IndexKind index, Metric metric,
               IndexOptions options) {
  check_metric(index, metric);
  QueryPlan p = bind(ast, ds, metric, options);
  p.index = index;
  for (auto& g : p.groups) g.executor = choose(index, g);
  return p;
}

QueryPlan plan_with(const QueryAST& ast, const Dataset& ds, ExecutorKind executor, Metric metric,
                    IndexOptions options) {
  const IndexKind index = index_of(executor);
  check_metric(index, metric);
  QueryPlan p = bind(ast, ds, metric, options);
  p.index = index;
  for (auto& g : p.groups) {
    if (executor == ExecutorKind::GridSweep && !g.window.is_radius())
      throw PlanError("GridSweep only evaluates radius windows");
    if (executor == ExecutorKind::QtAnnotated && !g.window.is_radius())
      throw PlanError("QtAnnotated only evaluates radius windows");
    if (executor == ExecutorKind::QtAnnotated && !all_single_moment(g))
      throw PlanError("QtAnnotated cannot evaluate COVAR_POP, COVAR_SAMP or CORR");
    g.executor = executor;
  }
  return p;
}

std::string explain(const QueryPlan& plan) {
  std::ostringstream os;
  os << "index: " << to_string(plan.index) << "\n";
  os << "metric: " << to_string(plan.metric) << "\n";
  if (plan.index == IndexKind::Grid)
    os << "cell side: " << (plan.options.cell_side ? std::to_string(*plan.options.cell_side) : "auto")
       << "\n";
  if (plan.index == IndexKind::Quadtree)
    os << "leaf capacity: " << plan.options.quadtree.leaf_capacity
       << ", max depth: " << plan.options.quadtree.max_depth << "\n";
  for (std::size_t g = 0; g < plan.groups.size(); ++g) {
    const auto& group = plan.groups[g];
    os << "window " << g << ": " << frame_text(group.window) << " -> "
       << to_string(group.executor) << "\n";
    for (const auto& b : group.kinds) os << "  " << b.kind.call_text() << "\n";
  }
  os << "columns:";
  for (const auto& c : plan.columns) os << " [" << c.name << "]";
  os << "\n";
  return os.str();
}

}  // namespace swq::query
