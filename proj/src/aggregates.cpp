#include "swq/aggregates.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <utility>

#include "swq/error.hpp"

namespace swq {

namespace {

constexpr std::array<std::pair<AggregateFunction, std::string_view>, 17> kNames{{
    {AggregateFunction::Count, "COUNT"},
    {AggregateFunction::CountNonnull, "COUNT_NONNULL"},
    {AggregateFunction::Sum, "SUM"},
    {AggregateFunction::Avg, "AVG"},
    {AggregateFunction::VarPop, "VAR_POP"},
    {AggregateFunction::VarSamp, "VAR_SAMP"},
    {AggregateFunction::StddevPop, "STDDEV_POP"},
    {AggregateFunction::StddevSamp, "STDDEV_SAMP"},
    {AggregateFunction::CovarPop, "COVAR_POP"},
    {AggregateFunction::CovarSamp, "COVAR_SAMP"},
    {AggregateFunction::Corr, "CORR"},
    {AggregateFunction::Min, "MIN"},
    {AggregateFunction::Max, "MAX"},
    {AggregateFunction::AnyValue, "ANY_VALUE"},
    {AggregateFunction::ArrayAgg, "ARRAY_AGG"},
    {AggregateFunction::StringAgg, "STRING_AGG"},
    {AggregateFunction::CountIf, "COUNTIF"},
}};

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::toupper(static_cast<unsigned char>(x)) ==
                  std::toupper(static_cast<unsigned char>(y));
         });
}

}  // namespace

std::string_view to_string(AggregateFunction f) {
  for (const auto& [fn, name] : kNames)
    if (fn == f) return name;
  return "?";
}

AggregateFunction lookup_function(std::string_view name) {
  for (const auto& [fn, n] : kNames)
    if (iequals(n, name)) return fn;
  throw UnknownAggregate(std::string(name));
}

bool is_supported(AggregateFunction f) {
  switch (f) {
    case AggregateFunction::Min:
    case AggregateFunction::Max:
    case AggregateFunction::AnyValue:
    case AggregateFunction::ArrayAgg:
    case AggregateFunction::StringAgg:
    case AggregateFunction::CountIf:
      return false;
    default:
      return true;
  }
}

bool is_pairwise(AggregateFunction f) {
  return f == AggregateFunction::CovarPop || f == AggregateFunction::CovarSamp ||
         f == AggregateFunction::Corr;
}

bool is_single_moment(AggregateFunction f) { return is_supported(f) && !is_pairwise(f); }

std::string AggregateKind::call_text() const {
  std::string out(to_string(func));
  out += '(';
  if (func == AggregateFunction::Count) {
    out += '*';
  } else {
    out += attr_a;
    if (!attr_b.empty()) out += ", " + attr_b;
  }
  out += ')';
  return out;
}

AggregateState::AggregateState(AggregateFunction func)
    : func_(func), pairwise_(is_pairwise(func)) {
  if (!is_supported(func))
    throw UnsupportedAggregate(std::string(to_string(func)) +
                               " needs more than constant memory to support removal");
}

void AggregateState::add(const Sample& s) {
  ++rows_;
  if (pairwise_) {
    if (!s.a || !s.b) return;
    ++n_;
    sx_.add(*s.a);
    sy_.add(*s.b);
    sxx_.add_product(*s.a, *s.a);
    syy_.add_product(*s.b, *s.b);
    sxy_.add_product(*s.a, *s.b);
  } else if (s.a) {
    ++n_;
    sx_.add(*s.a);
    sxx_.add_product(*s.a, *s.a);
  }
}

void AggregateState::remove(const Sample& s) {
  if (rows_ == 0) throw NegativeCount("remove from an empty window");
  if (pairwise_) {
    if (s.a && s.b) {
      if (n_ == 0) throw NegativeCount("remove of a pair that was never added");
      --n_;
      sx_.sub(*s.a);
      sy_.sub(*s.b);
      sxx_.add_product(-*s.a, *s.a);
      syy_.add_product(-*s.b, *s.b);
      sxy_.add_product(-*s.a, *s.b);
    }
  } else if (s.a) {
    if (n_ == 0) throw NegativeCount("remove of a value that was never added");
    --n_;
    sx_.sub(*s.a);
    sxx_.add_product(-*s.a, *s.a);
  }
  --rows_;
}

void AggregateState::add_moments(const Moments& m) {
  if (pairwise_) throw UnsupportedAggregate("pairwise aggregates cannot merge single moments");
  rows_ += m.rows;
  n_ += m.n;
  sx_.add(m.s1);
  sxx_.add(m.s2);
}

namespace {

// Minimal double-double arithmetic for the finalize step.
struct DD {
  double hi = 0.0, lo = 0.0;
};

DD renorm(double hi, double lo) {
  const double s = hi + lo;
  return {s, lo - (s - hi)};
}

DD two_sum(double a, double b) {
  const double s = a + b;
  const double bv = s - a;
  return {s, (a - (s - bv)) + (b - bv)};
}

DD dd(const CompensatedSum& s) { return {s.hi(), s.lo()}; }

DD mul(DD a, DD b) {
  const double p = a.hi * b.hi;
  return renorm(p, std::fma(a.hi, b.hi, -p) + a.hi * b.lo + a.lo * b.hi);
}

DD sub(DD a, DD b) {
  const DD s = two_sum(a.hi, -b.hi);
  return renorm(s.hi, s.lo + (a.lo - b.lo));
}

// n * sum(xy) - sum(x) * sum(y), i.e. n^2 times the population co-moment.
// Evaluated in double-double so near-constant windows keep their precision.
double scaled_comoment(double n, const CompensatedSum& sxy, const CompensatedSum& sx,
                       const CompensatedSum& sy) {
  const DD d = sub(mul({n, 0.0}, dd(sxy)), mul(dd(sx), dd(sy)));
  return d.hi + d.lo;
}

}  // namespace

std::optional<double> AggregateState::finalize() const {
  const double n = static_cast<double>(n_);

  // Variances are clamped at 0 and are exactly 0 for a single value.
  auto scaled_var = [&](const CompensatedSum& s, const CompensatedSum& ss) {
    if (n_ == 1) return 0.0;
    return std::max(0.0, scaled_comoment(n, ss, s, s));
  };
  auto scaled_cov = [&] {
    if (n_ == 1) return 0.0;
    return scaled_comoment(n, sxy_, sx_, sy_);
  };

  switch (func_) {
    case AggregateFunction::Count:
      return static_cast<double>(rows_);
    case AggregateFunction::CountNonnull:
      return n;
    default:
      break;
  }
  if (n_ == 0) return std::nullopt;

  switch (func_) {
    case AggregateFunction::Sum:
      return sx_.value();
    case AggregateFunction::Avg:
      return sx_.value() / n;
    case AggregateFunction::VarPop:
      return scaled_var(sx_, sxx_) / (n * n);
    case AggregateFunction::StddevPop:
      return std::sqrt(scaled_var(sx_, sxx_) / (n * n));
    case AggregateFunction::VarSamp:
    case AggregateFunction::StddevSamp: {
      if (n_ < 2) return std::nullopt;
      const double v = scaled_var(sx_, sxx_) / (n * (n - 1.0));
      return func_ == AggregateFunction::VarSamp ? v : std::sqrt(v);
    }
    case AggregateFunction::CovarPop:
      return scaled_cov() / (n * n);
    case AggregateFunction::CovarSamp:
      if (n_ < 2) return std::nullopt;
      return scaled_cov() / (n * (n - 1.0));
    case AggregateFunction::Corr: {
      const double vx = scaled_var(sx_, sxx_);
      const double vy = scaled_var(sy_, syy_);
      if (vx <= 0.0 || vy <= 0.0) return std::nullopt;
      return std::clamp(scaled_cov() / (std::sqrt(vx) * std::sqrt(vy)), -1.0, 1.0);
    }
    default:
      return std::nullopt;
  }
}

}  // namespace swq
