#pragma once

#include <string>
#include <variant>
#include <vector>

#include "swq/aggregates.hpp"
#include "swq/core.hpp"

namespace swq::query {

struct ColumnRef {
  std::string name;
  friend bool operator==(const ColumnRef&, const ColumnRef&) = default;
};

// FUNC(args) OVER (frame). `label` is the call's source text and becomes the
// output column name; it does not take part in equality.
struct AnalyticCall {
  AggregateKind kind;
  WindowSpec window;
  std::string label;

  friend bool operator==(const AnalyticCall& a, const AnalyticCall& b) {
    return a.kind == b.kind && a.window == b.window;
  }
};

using SelectItem = std::variant<ColumnRef, AnalyticCall>;

struct QueryAST {
  std::vector<SelectItem> select_items;
  std::string from_table;

  friend bool operator==(const QueryAST&, const QueryAST&) = default;
};

}  // namespace swq::query
