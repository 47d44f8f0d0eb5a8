#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "swq/error.hpp"
#include "swq/geometry.hpp"

using namespace swq;

TEST(Distance, Planar) {
  EXPECT_DOUBLE_EQ(distance(Metric::Planar, {0, 0}, {3, 4}), 5.0);
  EXPECT_EQ(distance(Metric::Planar, {1, 0}, {1, 0}), 0.0);
}

TEST(Distance, HaversineQuarterGreatCircle) {
  const double expected = std::numbers::pi * kEarthRadiusKm / 2.0;
  EXPECT_NEAR(distance(Metric::Haversine, {0, 0}, {0, 90}), expected, 1e-9);
  EXPECT_NEAR(expected, 10007.557, 1e-3);
}

TEST(Distance, HaversineRejectsBadLatitude) {
  EXPECT_THROW(distance(Metric::Haversine, {0, 91}, {0, 0}), LatitudeOutOfRange);
  EXPECT_THROW(distance(Metric::Haversine, {0, 0}, {0, -90.5}), LatitudeOutOfRange);
  EXPECT_NO_THROW(distance(Metric::Planar, {0, 91}, {0, 0}));
}

TEST(Distance, SymmetricAndTriangle) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> lon(-180, 180), lat(-90, 90);
  for (int i = 0; i < 2000; ++i) {
    const Coord a{lon(rng), lat(rng)}, b{lon(rng), lat(rng)}, c{lon(rng), lat(rng)};
    for (Metric m : {Metric::Planar, Metric::Haversine}) {
      const double ab = distance(m, a, b);
      EXPECT_EQ(ab, distance(m, b, a));
      EXPECT_GE(ab, 0.0);
      EXPECT_LE(distance(m, a, c), ab + distance(m, b, c) + 1e-9);
    }
  }
}

TEST(ClassifyRect, UnitCellExamples) {
  const Rect unit{0, 0, 1, 1};
  EXPECT_EQ(classify_rect(Metric::Planar, unit, {0.5, 0.5}, 0.4), CircleRelation::Partial);
  EXPECT_EQ(classify_rect(Metric::Planar, unit, {0.5, 0.5}, 1.0), CircleRelation::Contained);
  EXPECT_EQ(classify_rect(Metric::Planar, unit, {5, 5}, 1.0), CircleRelation::Disjoint);
}

TEST(ClassifyRect, BoundaryIsClosed) {
  const Rect unit{0, 0, 1, 1};
  // Farthest corner (3, 4) sits exactly on the circle.
  EXPECT_EQ(classify_rect(Metric::Planar, Rect{0, 0, 3, 4}, {0, 0}, 5.0), CircleRelation::Contained);
  // Touching the rectangle at a single point is Partial, not Disjoint.
  EXPECT_EQ(classify_rect(Metric::Planar, unit, {2, 0.5}, 1.0), CircleRelation::Partial);
  EXPECT_EQ(classify_rect(Metric::Planar, Rect{}, {0, 0}, 1e9), CircleRelation::Disjoint);
}

TEST(ClassifyRect, HaversineUnsupported) {
  EXPECT_THROW(classify_rect(Metric::Haversine, Rect{0, 0, 1, 1}, {0, 0}, 1.0), UnsupportedMetric);
}

// Contained means every inside point is within r; Disjoint means none is.
TEST(ClassifyRect, ConsistentWithPointDistances) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-10, 10), ur(0, 8), t(0, 1);
  int contained = 0, disjoint = 0;
  for (int trial = 0; trial < 5000; ++trial) {
    double x0 = u(rng), x1 = u(rng), y0 = u(rng), y1 = u(rng);
    const Rect rect{std::min(x0, x1), std::min(y0, y1), std::max(x0, x1), std::max(y0, y1)};
    const Coord center{u(rng), u(rng)};
    const double r = ur(rng);
    const auto rel = classify_rect(Metric::Planar, rect, center, r);
    contained += rel == CircleRelation::Contained;
    disjoint += rel == CircleRelation::Disjoint;
    for (int k = 0; k < 20; ++k) {
      const Coord p{rect.min_x + t(rng) * rect.width(), rect.min_y + t(rng) * rect.height()};
      const Coord corner{k % 2 ? rect.min_x : rect.max_x, k % 4 < 2 ? rect.min_y : rect.max_y};
      for (Coord q : {p, corner}) {
        if (!rect.contains(q)) continue;
        const double d = distance(Metric::Planar, center, q);
        if (rel == CircleRelation::Contained) EXPECT_LE(d, r);
        if (rel == CircleRelation::Disjoint) EXPECT_GT(d, r);
      }
    }
  }
  EXPECT_GT(contained, 50);
  EXPECT_GT(disjoint, 50);
}
