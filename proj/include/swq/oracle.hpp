#pragma once

// Brute-force references for tests and the bench harness. Nothing here is
// used by the engine's executors.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "swq/aggregates.hpp"
#include "swq/core.hpp"

namespace swq::oracle {

// Indices of all points with distance(center, p) <= r, ascending.
std::vector<std::size_t> bf_range(const Dataset& ds, Coord center, double r, Metric metric);

// The k nearest points, fully sorted by (distance, id).
std::vector<std::size_t> bf_knn(const Dataset& ds, Coord center, std::uint64_t k,
                                std::optional<std::size_t> exclude, Metric metric);

// Window of point i (itself included), ascending indices.
std::vector<std::size_t> bf_window(const Dataset& ds, std::size_t i, const WindowSpec& spec,
                                   Metric metric);

// Recomputes the aggregate from scratch with centered two-pass moments.
std::optional<double> bf_window_aggregate(const Dataset& ds, std::span<const std::size_t> window,
                                          const AggregateKind& kind);

}  // namespace swq::oracle
