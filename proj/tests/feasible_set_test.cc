#include "adafw/feasible_set.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "oracle_utils.hpp"

namespace {

using adafw::FeasibleRegion;
using adafw::Norm;
using adafw::Vector;
using adafw::metric_projection_l1;

Vector vec(std::initializer_list<double> values) {
  Vector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v[i++] = x;
  return v;
}

TEST(Lmo, L1BallMovesAgainstLargestCoordinate) {
  const auto region = FeasibleRegion::l1_ball(3, 2.0);
  EXPECT_EQ(region.lmo(vec({3.0, -1.0, 0.5})), vec({-2.0, 0.0, 0.0}));
}

TEST(Lmo, LinfBallSignRule) {
  const auto region = FeasibleRegion::linf_ball(2, 1.0);
  EXPECT_EQ(region.lmo(vec({1.0, -2.0})), vec({-1.0, 1.0}));
}

TEST(Lmo, TieBreaksTowardLowestIndexAndZeroCountsPositive) {
  const auto region = FeasibleRegion::l1_ball(3, 1.0);
  EXPECT_EQ(region.lmo(vec({2.0, -2.0, 2.0})), vec({-1.0, 0.0, 0.0}));
  EXPECT_EQ(region.lmo(vec({0.0, 0.0, 0.0})), vec({-1.0, 0.0, 0.0}));
  const auto box = FeasibleRegion::linf_ball(2, 1.0);
  EXPECT_EQ(box.lmo(vec({0.0, -1.0})), vec({-1.0, 1.0}));
}

TEST(Lmo, MatchesBruteForceVertexEnumerationOnL1) {
  const Eigen::Index n = 5;
  const auto region = FeasibleRegion::l1_ball(n, 1.0);
  const auto vertices = oracle::l1_ball_vertices(n, 1.0, Vector::Zero(n));
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const Vector g = oracle::random_vector(rng, n, -5.0, 5.0);
    const Vector v = region.lmo(g);
    double best = std::numeric_limits<double>::infinity();
    for (const auto& w : vertices) best = std::min(best, g.dot(w));
    EXPECT_NEAR(g.dot(v), best, 1e-12);
  }
}

TEST(Lmo, MatchesBruteForceVertexEnumerationOnLinf) {
  const Eigen::Index n = 4;
  std::mt19937_64 rng(11);
  const Vector center = oracle::random_vector(rng, n, -1.0, 1.0);
  const auto region = FeasibleRegion::linf_ball(center, 0.7);
  const auto vertices = oracle::linf_ball_vertices(n, 0.7, center);
  for (int trial = 0; trial < 100; ++trial) {
    const Vector g = oracle::random_vector(rng, n, -5.0, 5.0);
    const Vector v = region.lmo(g);
    double best = std::numeric_limits<double>::infinity();
    for (const auto& w : vertices) best = std::min(best, g.dot(w));
    EXPECT_NEAR(g.dot(v), best, 1e-12);
  }
}

TEST(Lmo, OutputIsAlwaysFeasible) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const Eigen::Index n = 1 + static_cast<Eigen::Index>(rng() % 8);
    const Vector center = oracle::random_vector(rng, n, -2.0, 2.0);
    const double radius = 0.1 + 3.0 * (static_cast<double>(rng() % 1000) / 1000.0);
    const auto region = trial % 2 == 0
                            ? FeasibleRegion::l1_ball(center, radius)
                            : FeasibleRegion::linf_ball(center, radius);
    const Vector g = oracle::random_vector(rng, n, -10.0, 10.0);
    EXPECT_TRUE(region.contains(region.lmo(g), 1e-12));
  }
}

TEST(Lmo, RejectsBadInput) {
  const auto region = FeasibleRegion::l1_ball(3, 1.0);
  EXPECT_THROW(region.lmo(vec({1.0, 2.0})), std::invalid_argument);
  Vector g = vec({1.0, 2.0, 3.0});
  g[1] = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(region.lmo(g), std::invalid_argument);
}

TEST(Contains, BoundaryAndOutside) {
  const auto region = FeasibleRegion::l1_ball(2, 1.0);
  EXPECT_TRUE(region.contains(vec({0.5, 0.5}), 0.0));
  EXPECT_FALSE(region.contains(vec({0.6, 0.5}), 0.0));
  Vector x = vec({0.0, 0.0});
  x[0] = std::numeric_limits<double>::infinity();
  EXPECT_THROW(region.contains(x), std::invalid_argument);
}

TEST(Region, ConstructionErrors) {
  EXPECT_THROW(FeasibleRegion::l1_ball(3, 0.0), std::invalid_argument);
  EXPECT_THROW(FeasibleRegion::l1_ball(3, -1.0), std::invalid_argument);
}

TEST(Diameter, ClosedForms) {
  const auto l1 = FeasibleRegion::l1_ball(4, 1.0);
  EXPECT_DOUBLE_EQ(l1.diameter(Norm::l1), 2.0);
  EXPECT_DOUBLE_EQ(l1.diameter(Norm::l2), 2.0);
  EXPECT_DOUBLE_EQ(l1.diameter(Norm::linf), 2.0);
  const auto box = FeasibleRegion::linf_ball(4, 1.0);
  EXPECT_DOUBLE_EQ(box.diameter(Norm::l2), 4.0);
  EXPECT_DOUBLE_EQ(box.diameter(Norm::l1), 8.0);
  EXPECT_DOUBLE_EQ(box.diameter(Norm::linf), 2.0);
}

TEST(Diameter, MatchesVertexPairEnumeration) {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::Index n = 2 + static_cast<Eigen::Index>(rng() % 4);
    const Vector center = oracle::random_vector(rng, n, -1.0, 1.0);
    const double radius = 0.2 + static_cast<double>(rng() % 100) / 50.0;
    const bool l1 = trial % 2 == 0;
    const auto region = l1 ? FeasibleRegion::l1_ball(center, radius)
                           : FeasibleRegion::linf_ball(center, radius);
    const auto vertices = l1 ? oracle::l1_ball_vertices(n, radius, center)
                             : oracle::linf_ball_vertices(n, radius, center);
    for (Norm p : {Norm::l1, Norm::l2, Norm::linf}) {
      double best = 0.0;
      for (const auto& a : vertices) {
        for (const auto& b : vertices) {
          const Vector d = a - b;
          const double dist = p == Norm::l1   ? d.lpNorm<1>()
                              : p == Norm::l2 ? d.norm()
                                              : d.lpNorm<Eigen::Infinity>();
          best = std::max(best, dist);
        }
      }
      EXPECT_NEAR(region.diameter(p), best, 1e-9);
    }
  }
}

TEST(MetricProjection, FeasiblePointIsUntouched) {
  const Vector z = vec({0.2, -0.1});
  EXPECT_EQ(metric_projection_l1(z, vec({1.0, 1.0}), 1.0), z);
}

TEST(MetricProjection, SymmetricBoundaryCase) {
  const Vector x = metric_projection_l1(vec({1.0, 1.0}), vec({1.0, 1.0}), 1.0);
  EXPECT_NEAR(x[0], 0.5, 1e-15);
  EXPECT_NEAR(x[1], 0.5, 1e-15);
}

TEST(MetricProjection, RejectsBadInput) {
  EXPECT_THROW(metric_projection_l1(vec({1.0}), vec({0.0}), 1.0),
               std::invalid_argument);
  EXPECT_THROW(metric_projection_l1(vec({1.0}), vec({-2.0}), 1.0),
               std::invalid_argument);
  EXPECT_THROW(metric_projection_l1(vec({1.0}), vec({1.0}), 0.0),
               std::invalid_argument);
  EXPECT_THROW(metric_projection_l1(vec({1.0, 2.0}), vec({1.0}), 1.0),
               std::invalid_argument);
}

double metric_objective(const Vector& x, const Vector& z, const Vector& h) {
  return h.cwiseProduct((x - z).cwiseAbs2()).sum();
}

TEST(MetricProjection, MatchesProjectedGradientOracle) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 60; ++trial) {
    const Eigen::Index n = 6;
    const Vector z = oracle::random_vector(rng, n, -2.0, 2.0);
    const Vector h = oracle::random_vector(rng, n, 0.1, 10.0);
    const Vector x = metric_projection_l1(z, h, 1.0);
    const Vector ref = oracle::pg_weighted_least_squares_l1(z, h, 1.0, 20000);
    EXPECT_LE(std::abs(metric_objective(x, z, h) - metric_objective(ref, z, h)),
              1e-6);
    EXPECT_LE(x.lpNorm<1>(), 1.0 + 1e-12);
  }
}

TEST(MetricProjection, OptimalAmongRandomFeasiblePoints) {
  std::mt19937_64 rng(29);
  const Eigen::Index n = 6;
  const Vector z = oracle::random_vector(rng, n, -2.0, 2.0);
  const Vector h = oracle::random_vector(rng, n, 0.1, 10.0);
  const Vector x = metric_projection_l1(z, h, 1.0);
  const double fx = metric_objective(x, z, h);
  for (int i = 0; i < 1000; ++i) {
    const Vector y = oracle::random_point_in_l1_ball(rng, n, 1.0);
    EXPECT_LE(fx, metric_objective(y, z, h) + 1e-9);
  }
}

TEST(MetricProjection, Idempotent) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::Index n = 8;
    const Vector z = oracle::random_vector(rng, n, -3.0, 3.0);
    const Vector h = oracle::random_vector(rng, n, 0.1, 10.0);
    const Vector once = metric_projection_l1(z, h, 1.0);
    const Vector twice = metric_projection_l1(once, h, 1.0);
    EXPECT_LE((once - twice).lpNorm<Eigen::Infinity>(), 1e-12);
  }
}

TEST(MetricProjection, IdentityMetricReducesToEuclideanProjection) {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::Index n = 7;
    const Vector z = oracle::random_vector(rng, n, -2.0, 2.0);
    const Vector ours = metric_projection_l1(z, Vector::Ones(n), 1.0);
    const Vector ref = oracle::euclidean_projection_l1(z, 1.0);
    EXPECT_EQ(ours, ref);
  }
}

}  // namespace
