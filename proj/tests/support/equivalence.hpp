#pragma once

#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "support/fixtures.hpp"
#include "swq/oracle.hpp"
#include "swq/query/executor.hpp"
#include "swq/query/planner.hpp"

namespace swq::fx {

struct EquivalenceReport {
  std::size_t executors_run = 0;
  std::size_t windows_checked = 0;
  std::size_t values_checked = 0;
  std::size_t sweep_steps = 0;
  std::size_t delta_failures = 0;  // sweep steps whose deltas did not rebuild the next window
  std::vector<std::string> failures;  // first few only

  bool ok() const { return failures.empty(); }
  void fail_delta(const std::string& what) {
    ++delta_failures;
    fail(what);
  }
  void fail(const std::string& what) {
    if (failures.size() < 10) failures.push_back(what);
    else if (failures.size() == 10) failures.push_back("...");
  }
};

inline query::QueryAST window_query(const WindowSpec& window, const std::vector<AggregateKind>& kinds) {
  query::QueryAST ast;
  ast.select_items.push_back(query::ColumnRef{"id"});
  for (const auto& k : kinds) ast.select_items.push_back(query::AnalyticCall{k, window, ""});
  ast.from_table = "t";
  return ast;
}

inline constexpr query::ExecutorKind kAllExecutors[] = {
    query::ExecutorKind::NaivePerPoint, query::ExecutorKind::GridPerPoint, query::ExecutorKind::GridSweep,
    query::ExecutorKind::QtAnnotated, query::ExecutorKind::QtPerPoint};

// Runs every executor that can evaluate `window` against the oracle. Window
// sets must match exactly; values within 1e-9 relative (1e-12 absolute).
// QtAnnotated runs on the single-moment subset of `kinds`; its windows never
// materialize, so only its values are compared. GridSweep windows are rebuilt
// from the entering/leaving deltas, which checks delta soundness at each step.
inline void check_equivalence(const Dataset& ds, const WindowSpec& window, const std::vector<AggregateKind>& kinds,
                              EquivalenceReport& report, query::IndexOptions options = {}) {
  using query::ExecutorKind;
  std::vector<std::vector<std::size_t>> want_windows(ds.size());
  for (std::size_t i = 0; i < ds.size(); ++i) want_windows[i] = oracle::bf_window(ds, i, window, Metric::Planar);

  for (ExecutorKind ex : kAllExecutors) {
    if (window.is_knn() && (ex == ExecutorKind::GridSweep || ex == ExecutorKind::QtAnnotated)) continue;
    std::vector<AggregateKind> used = kinds;
    if (ex == ExecutorKind::QtAnnotated)
      std::erase_if(used, [](const AggregateKind& k) { return !is_single_moment(k.func); });
    if (used.empty()) continue;

    const std::string tag = std::string(query::to_string(ex)) + " " + frame_text(window) + ": ";
    const auto plan = query::plan_with(window_query(window, used), ds, ex, Metric::Planar, options);
    if (plan.groups.size() != 1) {
      report.fail(tag + "expected one window group");
      continue;
    }
    ++report.executors_run;

    std::vector<bool> seen(ds.size(), false);
    std::set<std::size_t> live;
    query::ExecutionHooks hooks;
    hooks.on_window = [&](std::size_t, std::size_t p, std::span<const std::size_t> w) {
      seen[p] = true;
      ++report.windows_checked;
      if (!std::equal(w.begin(), w.end(), want_windows[p].begin(), want_windows[p].end()))
        report.fail(tag + "window of " + ds.point(p).id + " differs");
    };
    hooks.on_sweep = [&](std::size_t, std::optional<std::size_t> prev, std::size_t cur,
                         std::span<const std::size_t> entering, std::span<const std::size_t> leaving) {
      ++report.sweep_steps;
      if (!prev && !live.empty()) report.fail_delta(tag + "sweep restarted with a nonempty window");
      for (std::size_t i : leaving)
        if (live.erase(i) != 1) report.fail_delta(tag + "leaving point not in window");
      for (std::size_t i : entering)
        if (!live.insert(i).second) report.fail_delta(tag + "entering point already in window");
      seen[cur] = true;
      ++report.windows_checked;
      if (!std::equal(live.begin(), live.end(), want_windows[cur].begin(), want_windows[cur].end()))
        report.fail_delta(tag + "delta-built window of " + ds.point(cur).id + " differs");
    };
    const auto res = query::execute_group(plan, 0, ds, hooks);

    if (ex != ExecutorKind::QtAnnotated)
      for (std::size_t i = 0; i < ds.size(); ++i)
        if (!seen[i]) report.fail(tag + "no window reported for " + ds.point(i).id);
    if (res.values.size() != ds.size()) {
      report.fail(tag + "wrong row count");
      continue;
    }
    for (std::size_t i = 0; i < ds.size(); ++i)
      for (std::size_t k = 0; k < used.size(); ++k) {
        const auto want = oracle::bf_window_aggregate(ds, want_windows[i], used[k]);
        ++report.values_checked;
        if (!close(res.values[i][k], want)) {
          std::ostringstream os;
          os << tag << used[k].call_text() << " at " << ds.point(i).id << ": got "
             << (res.values[i][k] ? std::to_string(*res.values[i][k]) : "NULL") << ", want "
             << (want ? std::to_string(*want) : "NULL");
          report.fail(os.str());
        }
      }
  }
}

}  // namespace swq::fx
