#include "adafw/adaptive_metric.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "oracle_utils.hpp"

namespace {

using adafw::AdaGradAccumulator;
using adafw::AmsGradState;
using adafw::ClipSchedule;
using adafw::DiagonalMetric;
using adafw::clip_metric;
using adafw::metric_norm_sq;
using Vector = Eigen::VectorXd;

Vector vec(std::initializer_list<double> values) {
  Vector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v[i++] = x;
  return v;
}

TEST(AdaGrad, FirstAndSecondUpdate) {
  AdaGradAccumulator acc(2, 0.01);
  DiagonalMetric h = acc.update(vec({3.0, 4.0}));
  EXPECT_NEAR(h.entries[0], 3.01, 1e-15);
  EXPECT_NEAR(h.entries[1], 4.01, 1e-15);
  h = acc.update(vec({4.0, 0.0}));
  EXPECT_NEAR(h.entries[0], 5.01, 1e-15);
  EXPECT_NEAR(h.entries[1], 4.01, 1e-15);
}

TEST(AdaGrad, MatchesRecomputationFromGradientLog) {
  std::mt19937_64 rng(5);
  const Eigen::Index n = 6;
  AdaGradAccumulator acc(n, 1e-8);
  std::vector<Vector> log;
  DiagonalMetric h{Vector::Zero(n)};
  Vector previous = Vector::Zero(n);
  for (int step = 0; step < 100; ++step) {
    const Vector g = oracle::random_vector(rng, n, -3.0, 3.0);
    log.push_back(g);
    h = acc.update(g);
    Vector expected = Vector::Zero(n);
    for (const auto& gs : log) expected += gs.cwiseAbs2();
    expected = (expected.cwiseSqrt().array() + 1e-8).matrix();
    EXPECT_LE((h.entries - expected).lpNorm<Eigen::Infinity>(), 1e-12);
    // Entries never decrease.
    EXPECT_TRUE((h.entries.array() >= previous.array() - 1e-15).all());
    previous = h.entries;
  }
}

TEST(AdaGrad, RejectsBadInput) {
  EXPECT_THROW(AdaGradAccumulator(3, 0.0), std::invalid_argument);
  AdaGradAccumulator acc(3);
  EXPECT_THROW(acc.update(vec({1.0, 2.0})), std::invalid_argument);
  Vector g = vec({1.0, 2.0, 3.0});
  g[0] = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(acc.update(g), std::invalid_argument);
}

TEST(Clip, ClampsAndLeavesInteriorAlone) {
  const DiagonalMetric h{vec({0.5, 10.0})};
  const DiagonalMetric clipped = clip_metric(h, 1.0, 4.0);
  EXPECT_EQ(clipped.entries, vec({1.0, 4.0}));
  const DiagonalMetric inside{vec({2.0, 3.0})};
  EXPECT_EQ(clip_metric(inside, 1.0, 4.0).entries, inside.entries);
}

TEST(Clip, ConditionNumberBound) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    const DiagonalMetric h{oracle::random_vector(rng, 8, 0.01, 100.0)};
    const double lo = 0.5, hi = 20.0;
    const DiagonalMetric c = clip_metric(h, lo, hi);
    EXPECT_GE(c.entries.minCoeff(), lo);
    EXPECT_LE(c.entries.maxCoeff(), hi);
    EXPECT_GE(hi / lo, c.entries.maxCoeff() / c.entries.minCoeff());
  }
}

TEST(Clip, RejectsBadBounds) {
  const DiagonalMetric h{vec({1.0})};
  EXPECT_THROW(clip_metric(h, 0.0, 1.0), std::invalid_argument);
  EXPECT_THROW(clip_metric(h, 2.0, 1.0), std::invalid_argument);
}

TEST(ClipSchedule, BoundsMayOnlyTighten) {
  ClipSchedule sched(1.0, 8.0);
  sched.tighten(2.0, 4.0);
  EXPECT_DOUBLE_EQ(sched.lambda_minus(), 2.0);
  EXPECT_DOUBLE_EQ(sched.lambda_plus(), 4.0);
  EXPECT_THROW(sched.tighten(1.5, 4.0), std::invalid_argument);
  EXPECT_THROW(sched.tighten(2.0, 5.0), std::invalid_argument);
}

TEST(AmsGrad, FirstUpdateFromZeroState) {
  AmsGradState state(2, 0.9, 0.99);
  const auto out = state.update(vec({1.0, 2.0}));
  EXPECT_NEAR(out.momentum[0], 0.1, 1e-15);
  EXPECT_NEAR(out.momentum[1], 0.2, 1e-15);
  EXPECT_NEAR(state.second_moment()[0], 0.01, 1e-15);
  EXPECT_NEAR(state.second_moment()[1], 0.04, 1e-15);
  EXPECT_EQ(state.max_second_moment(), state.second_moment());
}

TEST(AmsGrad, ZeroGradientsDecayMomentumAndFreezeMax) {
  AmsGradState state(2, 0.9, 0.99);
  state.update(vec({1.0, -2.0}));
  const Vector frozen = state.max_second_moment();
  Vector m = state.momentum();
  for (int step = 0; step < 20; ++step) {
    const auto out = state.update(Vector::Zero(2));
    EXPECT_LE((out.momentum - 0.9 * m).lpNorm<Eigen::Infinity>(), 1e-15);
    EXPECT_EQ(state.max_second_moment(), frozen);
    m = out.momentum;
  }
}

TEST(AmsGrad, MatchesClosedFormEmaRecomputation) {
  std::mt19937_64 rng(13);
  const Eigen::Index n = 4;
  const double bm = 0.9, bs = 0.99;
  AmsGradState state(n, bm, bs);
  std::vector<Vector> log;
  Vector previous_max = Vector::Zero(n);
  for (int step = 0; step < 200; ++step) {
    const Vector g = oracle::random_vector(rng, n, -2.0, 2.0);
    log.push_back(g);
    state.update(g);
    Vector m = Vector::Zero(n);
    Vector s = Vector::Zero(n);
    for (const auto& gs : log) {
      m = bm * m + (1.0 - bm) * gs;
      s = bs * s + (1.0 - bs) * gs.cwiseAbs2();
    }
    EXPECT_LE((state.momentum() - m).lpNorm<Eigen::Infinity>(), 1e-12);
    EXPECT_LE((state.second_moment() - s).lpNorm<Eigen::Infinity>(), 1e-12);
    EXPECT_TRUE(
        (state.max_second_moment().array() >= previous_max.array()).all());
    previous_max = state.max_second_moment();
  }
}

TEST(AmsGrad, RejectsBadBetas) {
  EXPECT_THROW(AmsGradState(2, 1.0, 0.99), std::invalid_argument);
  EXPECT_THROW(AmsGradState(2, 0.9, 0.0), std::invalid_argument);
  // beta_m >= sqrt(beta_s)
  EXPECT_THROW(AmsGradState(2, 0.95, 0.9), std::invalid_argument);
}

TEST(MetricNorm, IdentityAndZero) {
  const DiagonalMetric h{Vector::Ones(3)};
  const Vector d = vec({1.0, -2.0, 3.0});
  EXPECT_DOUBLE_EQ(metric_norm_sq(h, d), d.squaredNorm());
  EXPECT_DOUBLE_EQ(metric_norm_sq(h, Vector::Zero(3)), 0.0);
}

TEST(MetricNorm, EigenvalueSandwich) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::Index n = 5;
    const DiagonalMetric h{oracle::random_vector(rng, n, 0.1, 10.0)};
    const Vector d = oracle::random_vector(rng, n, -3.0, 3.0);
    const double v = metric_norm_sq(h, d);
    EXPECT_GE(v, h.entries.minCoeff() * d.squaredNorm() - 1e-12);
    EXPECT_LE(v, h.entries.maxCoeff() * d.squaredNorm() + 1e-12);
  }
}

}  // namespace
