#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace swq {

// Every analytic function name the query language recognizes. Only the
// const-memory, removal-safe ones can be evaluated; the rest are rejected
// with UnsupportedAggregate when a state is created for them.
enum class AggregateFunction {
  Count,
  CountNonnull,
  Sum,
  Avg,
  VarPop,
  VarSamp,
  StddevPop,
  StddevSamp,
  CovarPop,
  CovarSamp,
  Corr,
  Min,
  Max,
  AnyValue,
  ArrayAgg,
  StringAgg,
  CountIf,
};

std::string_view to_string(AggregateFunction f);

// Case-insensitive lookup. Throws UnknownAggregate.
AggregateFunction lookup_function(std::string_view name);

bool is_supported(AggregateFunction f);
// True for the two-attribute kinds (COVAR_*, CORR).
bool is_pairwise(AggregateFunction f);
// True for kinds whose state is fully described by (rows, n, sum, sum of squares).
bool is_single_moment(AggregateFunction f);

struct AggregateKind {
  AggregateFunction func = AggregateFunction::Count;
  std::string attr_a;  // empty for COUNT
  std::string attr_b;  // only for pairwise kinds

  static AggregateKind count() { return {AggregateFunction::Count, {}, {}}; }
  static AggregateKind of(AggregateFunction f, std::string a, std::string b = {}) {
    return {f, std::move(a), std::move(b)};
  }

  // Canonical call text, e.g. "SUM(number_of_visits)" or "COUNT(*)".
  std::string call_text() const;

  friend bool operator==(const AggregateKind&, const AggregateKind&) = default;
};

// Double-double accumulator: the running sum is kept as an unevaluated pair
// hi + lo, so each add is exact to about 2^-106 of the sum. Removing a value
// is adding its negation, and the cancellation that removal causes does not
// eat into the result. Products are added exactly through fma.
class CompensatedSum {
 public:
  void add(double v) {
    const double s = hi_ + v;
    const double bv = s - hi_;
    const double err = (hi_ - (s - bv)) + (v - bv);
    renormalize(s, lo_ + err);
  }
  void add(const CompensatedSum& o) {
    add(o.hi_);
    add(o.lo_);
  }
  void sub(double v) { add(-v); }
  // Adds a * b without rounding the product.
  void add_product(double a, double b) {
    const double p = a * b;
    add(p);
    add(std::fma(a, b, -p));
  }
  CompensatedSum& operator+=(double v) {
    add(v);
    return *this;
  }
  double value() const { return hi_ + lo_; }
  double hi() const { return hi_; }
  double lo() const { return lo_; }
  friend bool operator==(const CompensatedSum&, const CompensatedSum&) = default;

 private:
  void renormalize(double hi, double lo) {
    hi_ = hi + lo;
    lo_ = lo - (hi_ - hi);
  }
  double hi_ = 0.0;
  double lo_ = 0.0;
};

// Single-attribute moments over a set of rows.
struct Moments {
  std::int64_t rows = 0;  // rows, NULL or not
  std::int64_t n = 0;     // non-NULL values
  CompensatedSum s1;      // sum of values
  CompensatedSum s2;      // sum of squared values

  void add_value(double v) {
    ++n;
    s1.add(v);
    s2.add_product(v, v);
  }
  Moments& operator+=(const Moments& o) {
    rows += o.rows;
    n += o.n;
    s1.add(o.s1);
    s2.add(o.s2);
    return *this;
  }
  friend bool operator==(const Moments&, const Moments&) = default;
};

// One row's contribution: the value of attr_a and, for pairwise kinds, attr_b.
struct Sample {
  std::optional<double> a;
  std::optional<double> b;
};

// Const-memory window state for a single aggregate. A window is maintained
// by add() for entering rows and remove() for leaving rows; finalize() reads
// the current result without consuming the state.
class AggregateState {
 public:
  // Throws UnsupportedAggregate for MIN, MAX and the other non-const kinds.
  explicit AggregateState(AggregateFunction func);

  void add(const Sample& s);
  // Throws NegativeCount when the removal was never matched by an add.
  void remove(const Sample& s);
  // Merges precomputed moments. Single-moment kinds only.
  void add_moments(const Moments& m);

  std::optional<double> finalize() const;

  AggregateFunction function() const { return func_; }
  std::int64_t rows() const { return rows_; }
  std::int64_t count() const { return n_; }

 private:
  AggregateFunction func_;
  bool pairwise_;
  std::int64_t rows_ = 0;
  std::int64_t n_ = 0;
  CompensatedSum sx_, sxx_;
  CompensatedSum sy_, syy_, sxy_;
};

}  // namespace swq
