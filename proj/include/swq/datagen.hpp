#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "swq/core.hpp"

namespace swq::datagen {

enum class Distribution { Uniform, Clusters };

struct GenOptions {
  std::size_t n = 0;
  Distribution distribution = Distribution::Uniform;
  std::size_t clusters = 8;
  double sigma = 3.0;
  std::uint64_t seed = 1;
};

// Portable random stream: std::mt19937_64 (fully specified by the standard)
// with explicit conversions, so any language can reproduce the output.
//   uniform()   = (u >> 11) * 2^-53                   in [0, 1)
//   below(m)    = floor(uniform() * m)                in [0, m)
//   normal pair = Box-Muller with u1 = 1 - uniform(), u2 = uniform():
//                 sqrt(-2 ln u1) * (cos 2 pi u2, sin 2 pi u2)
class Random {
 public:
  explicit Random(std::uint64_t seed) : engine_(seed) {}
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  std::uint64_t below(std::uint64_t m) {
    return static_cast<std::uint64_t>(uniform() * static_cast<double>(m));
  }
  std::pair<double, double> normal_pair();

 private:
  std::mt19937_64 engine_;
};

// Points "p0".."p{n-1}" in [0, 100)^2 with a number_of_visits attribute drawn
// from the integers 0..1000.
//
// Uniform: per point x = 100 u, y = 100 u, visits = below(1001).
// Clusters: first `clusters` centers (100 u, 100 u); then per point a center
// below(clusters), a normal pair scaled by sigma added to it (redrawn until
// inside [0, 100)^2), then visits = below(1001).
std::vector<Point> generate_points(const GenOptions& options);
Dataset generate(const GenOptions& options);

}  // namespace swq::datagen
