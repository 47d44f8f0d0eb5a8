#include "swq/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "swq/error.hpp"

namespace swq::oracle {

std::vector<std::size_t> bf_range(const Dataset& ds, Coord center, double r, Metric metric) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < ds.size(); ++i)
    if (distance(metric, center, ds.location(i)) <= r) out.push_back(i);
  return out;
}

std::vector<std::size_t> bf_knn(const Dataset& ds, Coord center, std::uint64_t k,
                                std::optional<std::size_t> exclude, Metric metric) {
  std::vector<std::pair<double, std::size_t>> all;
  for (std::size_t i = 0; i < ds.size(); ++i)
    if (i != exclude) all.emplace_back(distance(metric, center, ds.location(i)), i);
  std::sort(all.begin(), all.end(), [&](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    return ds.point(a.second).id < ds.point(b.second).id;
  });
  if (all.size() > k) all.resize(k);
  std::vector<std::size_t> out;
  for (const auto& e : all) out.push_back(e.second);
  return out;
}

std::vector<std::size_t> bf_window(const Dataset& ds, std::size_t i, const WindowSpec& spec,
                                   Metric metric) {
  std::vector<std::size_t> w;
  if (spec.is_radius()) {
    w = bf_range(ds, ds.location(i), spec.r(), metric);
  } else {
    w = bf_knn(ds, ds.location(i), spec.k(), i, metric);
    w.push_back(i);
    std::sort(w.begin(), w.end());
  }
  return w;
}

namespace {

std::vector<double> values_of(const Dataset& ds, std::span<const std::size_t> window,
                              const std::string& attr) {
  const auto a = ds.attr_index(attr);
  if (!a) throw UnknownColumn(attr);
  std::vector<double> out;
  for (std::size_t i : window)
    if (auto v = ds.value(*a, i)) out.push_back(*v);
  return out;
}

double mean(std::span<const double> v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

// Sum of centered products, second pass.
double centered(std::span<const double> a, double ma, std::span<const double> b, double mb) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - ma) * (b[i] - mb);
  return s;
}

}  // namespace

std::optional<double> bf_window_aggregate(const Dataset& ds, std::span<const std::size_t> window,
                                          const AggregateKind& kind) {
  using F = AggregateFunction;
  if (!is_supported(kind.func)) throw UnsupportedAggregate(std::string(to_string(kind.func)));
  if (kind.func == F::Count) return static_cast<double>(window.size());

  if (is_pairwise(kind.func)) {
    const auto ia = ds.attr_index(kind.attr_a);
    const auto ib = ds.attr_index(kind.attr_b);
    if (!ia) throw UnknownColumn(kind.attr_a);
    if (!ib) throw UnknownColumn(kind.attr_b);
    std::vector<double> xs, ys;
    for (std::size_t i : window) {
      auto x = ds.value(*ia, i);
      auto y = ds.value(*ib, i);
      if (x && y) {
        xs.push_back(*x);
        ys.push_back(*y);
      }
    }
    const double n = static_cast<double>(xs.size());
    if (xs.empty()) return std::nullopt;
    const double mx = mean(xs), my = mean(ys);
    const double cxy = centered(xs, mx, ys, my);
    if (kind.func == F::CovarPop) return cxy / n;
    if (kind.func == F::CovarSamp) return xs.size() < 2 ? std::nullopt : std::optional(cxy / (n - 1));
    const double cxx = centered(xs, mx, xs, mx);
    const double cyy = centered(ys, my, ys, my);
    if (cxx <= 0.0 || cyy <= 0.0) return std::nullopt;
    return cxy / (std::sqrt(cxx) * std::sqrt(cyy));
  }

  const auto v = values_of(ds, window, kind.attr_a);
  const double n = static_cast<double>(v.size());
  if (kind.func == F::CountNonnull) return n;
  if (v.empty()) return std::nullopt;
  const double m = mean(v);
  const double css = centered(v, m, v, m);
  switch (kind.func) {
    case F::Sum:
      return std::accumulate(v.begin(), v.end(), 0.0);
    case F::Avg:
      return m;
    case F::VarPop:
      return css / n;
    case F::StddevPop:
      return std::sqrt(css / n);
    case F::VarSamp:
      return v.size() < 2 ? std::nullopt : std::optional(css / (n - 1));
    case F::StddevSamp:
      return v.size() < 2 ? std::nullopt : std::optional(std::sqrt(css / (n - 1)));
    default:
      return std::nullopt;
  }
}

}  // namespace swq::oracle
