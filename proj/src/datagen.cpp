#include "swq/datagen.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace swq::datagen {

std::pair<double, double> Random::normal_pair() {
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  return {radius * std::cos(theta), radius * std::sin(theta)};
}

std::vector<Point> generate_points(const GenOptions& options) {
  constexpr double kSide = 100.0;
  Random rng(options.seed);
  std::vector<Point> points;
  points.reserve(options.n);

  std::vector<Coord> centers;
  if (options.distribution == Distribution::Clusters) {
    const std::size_t c = options.clusters == 0 ? 1 : options.clusters;
    for (std::size_t i = 0; i < c; ++i) {
      const double x = kSide * rng.uniform();
      const double y = kSide * rng.uniform();
      centers.push_back({x, y});
    }
  }

  for (std::size_t i = 0; i < options.n; ++i) {
    Point p;
    p.id = "p" + std::to_string(i);
    if (centers.empty()) {
      p.x = kSide * rng.uniform();
      p.y = kSide * rng.uniform();
    } else {
      const Coord c = centers[rng.below(centers.size())];
      for (;;) {
        const auto [zx, zy] = rng.normal_pair();
        p.x = c.x + options.sigma * zx;
        p.y = c.y + options.sigma * zy;
        if (p.x >= 0.0 && p.x < kSide && p.y >= 0.0 && p.y < kSide) break;
      }
    }
    p.attrs.emplace("number_of_visits", static_cast<double>(rng.below(1001)));
    points.push_back(std::move(p));
  }
  return points;
}

Dataset generate(const GenOptions& options) {
  return Dataset::from_points(generate_points(options), {"number_of_visits"});
}

}  // namespace swq::datagen
