#include "swq/window_state.hpp"

#include "swq/error.hpp"

namespace swq {

BoundAggregate bind(const AggregateKind& kind, const Dataset& ds) {
  if (!is_supported(kind.func))
    throw UnsupportedAggregate(std::string(to_string(kind.func)) +
                               " needs more than constant memory to support removal");
  BoundAggregate b{kind, {}, {}};
  auto resolve = [&](const std::string& name) {
    auto idx = ds.attr_index(name);
    if (!idx) throw UnknownColumn(name);
    return idx;
  };

  const bool wants_a = kind.func != AggregateFunction::Count;
  const bool wants_b = is_pairwise(kind.func);
  if (wants_a != !kind.attr_a.empty() || wants_b != !kind.attr_b.empty())
    throw UnsupportedAggregate(kind.call_text() + " has the wrong number of arguments");
  if (wants_a) b.attr_a = resolve(kind.attr_a);
  if (wants_b) b.attr_b = resolve(kind.attr_b);
  return b;
}

WindowAggregates::WindowAggregates(const Dataset& ds, std::span<const BoundAggregate> bound)
    : ds_(&ds), bound_(bound) {
  states_.reserve(bound.size());
  for (const auto& b : bound) states_.emplace_back(b.kind.func);
}

void WindowAggregates::add(std::size_t point) {
  for (std::size_t k = 0; k < states_.size(); ++k) states_[k].add(bound_[k].sample(*ds_, point));
}

void WindowAggregates::remove(std::size_t point) {
  for (std::size_t k = 0; k < states_.size(); ++k)
    states_[k].remove(bound_[k].sample(*ds_, point));
}

void WindowAggregates::reset() {
  for (std::size_t k = 0; k < states_.size(); ++k) states_[k] = AggregateState(bound_[k].kind.func);
}

std::vector<std::optional<double>> WindowAggregates::finalize() const {
  std::vector<std::optional<double>> out;
  out.reserve(states_.size());
  for (const auto& s : states_) out.push_back(s.finalize());
  return out;
}

}  // namespace swq
