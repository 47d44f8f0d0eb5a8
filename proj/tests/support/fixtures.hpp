#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "swq/core.hpp"
#include "swq/datagen.hpp"

namespace swq::fx {

// (0,0), (1,0), (3,0) with v = 1, 2, 3.
inline Dataset collinear() {
  std::vector<Point> pts;
  const double xs[] = {0.0, 1.0, 3.0};
  for (int i = 0; i < 3; ++i)
    pts.push_back({"p" + std::to_string(i), xs[i], 0.0, {{"v", static_cast<double>(i + 1)}}});
  return Dataset::from_points(std::move(pts), {"v"});
}

// Student scores in table order, and the expected row-window (2 preceding,
// 1 following) and value-range ([s-2, s+1]) averages.
inline constexpr double kScores[] = {90, 70, 89, 80, 81, 75, 86};
inline const double kRowWindowAvg[] = {(90 + 70) / 2.0,           (90 + 70 + 89) / 3.0,
                                       (90 + 70 + 89 + 80) / 4.0, (70 + 89 + 80 + 81) / 4.0,
                                       (89 + 80 + 81 + 75) / 4.0, (80 + 81 + 75 + 86) / 4.0,
                                       (81 + 75 + 86) / 3.0};
// Sorted by score.
inline constexpr double kSortedScores[] = {70, 75, 80, 81, 86, 89, 90};
inline const double kRangeWindowAvg[] = {70, 75, (80 + 81) / 2.0, (80 + 81) / 2.0, 86, (89 + 90) / 2.0,
                                         (89 + 90) / 2.0};

struct RandomSpec {
  std::size_t n = 512;
  bool clustered = false;
  std::uint64_t seed = 1;
  double null_fraction = 0.05;
};

// Generated points plus two extra attributes: v (integer, a few NULLs) and
// w (real, correlated with v, a few NULLs). Some coordinates are snapped to a
// coarse lattice so exact duplicates and distance ties occur.
inline Dataset random_dataset(const RandomSpec& spec) {
  datagen::GenOptions opts;
  opts.n = spec.n;
  opts.seed = spec.seed;
  opts.distribution = spec.clustered ? datagen::Distribution::Clusters : datagen::Distribution::Uniform;
  opts.clusters = 4;
  opts.sigma = 6.0;
  auto pts = datagen::generate_points(opts);

  std::mt19937_64 rng(spec.seed * 7919 + 13);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  std::uniform_int_distribution<int> vals(-1000, 1000);
  for (auto& p : pts) {
    if (u01(rng) < 0.05) {
      p.x = std::floor(p.x / 5.0) * 5.0;
      p.y = std::floor(p.y / 5.0) * 5.0;
    }
    const double v = vals(rng);
    p.attrs["v"] = u01(rng) < spec.null_fraction ? std::nullopt : std::optional(v);
    p.attrs["w"] = u01(rng) < spec.null_fraction ? std::nullopt
                                                 : std::optional(0.5 * v + 300.0 * (u01(rng) - 0.5));
  }
  return Dataset::from_points(std::move(pts), {"number_of_visits", "v", "w"});
}

// |a - b| <= max(rel * max(|a|, |b|), abs).
inline bool close(double a, double b, double rel = 1e-9, double abs = 1e-12) {
  return std::abs(a - b) <= std::max(rel * std::max(std::abs(a), std::abs(b)), abs);
}

inline bool close(const std::optional<double>& a, const std::optional<double>& b,
                  double rel = 1e-9, double abs = 1e-12) {
  if (!a || !b) return !a && !b;
  return close(*a, *b, rel, abs);
}

// q-quantile (0..1) of sampled pairwise planar distances.
inline double distance_quantile(const Dataset& ds, double q, std::uint64_t seed,
                                std::size_t samples = 4000) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, ds.size() - 1);
  std::vector<double> d;
  for (std::size_t s = 0; s < samples; ++s) {
    const std::size_t i = pick(rng), j = pick(rng);
    if (i != j) d.push_back(distance(Metric::Planar, ds.location(i), ds.location(j)));
  }
  std::sort(d.begin(), d.end());
  return d[static_cast<std::size_t>(q * static_cast<double>(d.size() - 1))];
}

}  // namespace swq::fx
