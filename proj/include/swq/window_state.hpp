#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "swq/aggregates.hpp"
#include "swq/core.hpp"

namespace swq {

// An AggregateKind resolved against a dataset's attribute columns.
struct BoundAggregate {
  AggregateKind kind;
  std::optional<std::size_t> attr_a;
  std::optional<std::size_t> attr_b;

  Sample sample(const Dataset& ds, std::size_t point) const {
    Sample s;
    if (attr_a) s.a = ds.value(*attr_a, point);
    if (attr_b) s.b = ds.value(*attr_b, point);
    return s;
  }
};

// Throws UnknownColumn for attributes missing from ds and UnsupportedAggregate
// for non-const-memory kinds or a wrong number of attributes.
BoundAggregate bind(const AggregateKind& kind, const Dataset& ds);

// The aggregate states of every analytic call sharing one window.
class WindowAggregates {
 public:
  WindowAggregates(const Dataset& ds, std::span<const BoundAggregate> bound);

  void add(std::size_t point);
  void remove(std::size_t point);
  // Folds a block of precomputed moments; kind_index selects the state.
  void add_moments(std::size_t kind_index, const Moments& m) { states_[kind_index].add_moments(m); }
  void reset();

  std::vector<std::optional<double>> finalize() const;
  std::size_t size() const { return states_.size(); }

 private:
  const Dataset* ds_;
  std::span<const BoundAggregate> bound_;
  std::vector<AggregateState> states_;
};

}  // namespace swq
