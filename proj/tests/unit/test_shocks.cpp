#include <gtest/gtest.h>

#include <cmath>

#include "monostab/shocks.hpp"
#include "support/models.hpp"

using namespace monostab;

namespace {
double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }
}  // namespace

TEST(Shocks, PointMassAlwaysSamplesItsAtom) {
  auto m = Marginal::discrete({1.0}, {1.0});
  CounterRng rng(3, "t", 0);
  for (int i = 0; i < 100; ++i) ASSERT_EQ(m.sample(rng), 1.0);
}

TEST(Shocks, SameSeedSameDraws) {
  ShockDistribution d({Marginal::uniform(0, 1), Marginal::exponential(2.0)});
  CounterRng a(9, "simulate", 4), b(9, "simulate", 4);
  for (int i = 0; i < 100; ++i) ASSERT_EQ(d.sample(a), d.sample(b));
}

TEST(Shocks, UniformTailExamples) {
  ShockDistribution u({Marginal::uniform(-1, 1)});
  EXPECT_DOUBLE_EQ(tail_mass_above(u, ShockVector{0.5}), 0.25);
  EXPECT_DOUBLE_EQ(tail_mass_below(u, ShockVector{-0.5}), 0.25);
  ShockDistribution u2({Marginal::uniform(0, 1), Marginal::uniform(0, 1)});
  EXPECT_DOUBLE_EQ(tail_mass_above(u2, ShockVector{0.5, 0.5}), 0.25);
  EXPECT_EQ(tail_mass_above(u, ShockVector{1.0}), 0.0);
  EXPECT_EQ(tail_mass_below(u, ShockVector{-1.0}), 0.0);
}

TEST(Shocks, DiscreteAtomsCountOnTheClosedSide) {
  auto m = Marginal::discrete({0.0, 1.0, 2.0}, {0.25, 0.5, 0.25});
  EXPECT_DOUBLE_EQ(m.prob_at_least(1.0), 0.75);
  EXPECT_DOUBLE_EQ(m.prob_above(1.0), 0.25);
  EXPECT_DOUBLE_EQ(m.prob_at_most(1.0), 0.75);
  EXPECT_DOUBLE_EQ(m.prob_below(1.0), 0.25);
  EXPECT_DOUBLE_EQ(m.mean(), 1.0);
  ShockDistribution d({m});
  EXPECT_DOUBLE_EQ(tail_mass_strictly_above(d, ShockVector{1.0}), 0.25);
  EXPECT_DOUBLE_EQ(tail_mass_strictly_below(d, ShockVector{1.0}), 0.25);
}

TEST(Shocks, ExponentialTail) {
  auto m = Marginal::exponential(2.0);
  EXPECT_NEAR(m.prob_at_least(1.0), std::exp(-2.0), 1e-15);
  EXPECT_DOUBLE_EQ(m.mean(), 0.5);
  EXPECT_EQ(m.support_lower(), 0.0);
  EXPECT_TRUE(std::isinf(m.support_upper()));
  EXPECT_NEAR(m.quantile(0.5), std::log(2.0) / 2.0, 1e-15);
}

TEST(Shocks, TruncatedNormalAgainstErfc) {
  auto m = Marginal::truncated_normal(0.0, 1.0, -1.0, 2.0);
  const double z = normal_cdf(2.0) - normal_cdf(-1.0);
  EXPECT_NEAR(m.prob_at_least(0.5), (normal_cdf(2.0) - normal_cdf(0.5)) / z, 1e-12);
  EXPECT_NEAR(m.prob_at_most(0.0), (normal_cdf(0.0) - normal_cdf(-1.0)) / z, 1e-12);
  EXPECT_EQ(m.prob_at_least(2.5), 0.0);
  EXPECT_NEAR(m.prob_at_most(m.quantile(0.3)), 0.3, 1e-10);
}

TEST(Shocks, InvalidMarginalsRejected) {
  EXPECT_THROW(Marginal::uniform(1, 1), ConfigError);
  EXPECT_THROW(Marginal::exponential(0), ConfigError);
  EXPECT_THROW(Marginal::discrete({0, 1}, {0.5, 0.4}), ConfigError);
  EXPECT_THROW(Marginal::discrete({0}, {-1}), ConfigError);
  EXPECT_THROW(Marginal::truncated_normal(0, 1, 50, 60), ConfigError);
  EXPECT_THROW(Marginal::uniform(0, 1).quantile(1.0), DomainError);
}

TEST(Shocks, SampleMeans) {
  ShockDistribution d({Marginal::uniform(0, 1), Marginal::exponential(1.0),
                       Marginal::truncated_normal(1.0, 2.0, -1.0, 3.0)});
  CounterRng rng(5, "means", 0);
  const int n = 100000;
  std::vector<double> sum(3, 0.0);
  for (int i = 0; i < n; ++i) {
    auto v = d.sample(rng);
    for (int j = 0; j < 3; ++j) sum[j] += v[j];
  }
  auto mean = d.mean();
  // 5 standard errors with sd <= 1.2
  for (int j = 0; j < 3; ++j) EXPECT_NEAR(sum[j] / n, mean[j], 0.02) << j;
}

// Tail masses are monotone in v and complementary on each side.
TEST(ShocksProperty, TailMassMonotoneAndComplementary) {
  std::vector<Marginal> ms{Marginal::uniform(-1, 1), Marginal::exponential(0.7),
                           Marginal::discrete({-1, 0, 2}, {0.2, 0.3, 0.5}),
                           Marginal::truncated_normal(0, 1, -2, 2)};
  CounterRng rng(8, "tails", 0);
  for (const auto& m : ms) {
    for (int i = 0; i < 5000; ++i) {
      double a = uniform_between(rng, -3, 3);
      double b = uniform_between(rng, -3, 3);
      if (i % 7 == 0) a = -1.0;  // hit atoms
      if (a > b) std::swap(a, b);
      ASSERT_GE(m.prob_at_least(a), m.prob_at_least(b));
      ASSERT_LE(m.prob_at_most(a), m.prob_at_most(b));
      ASSERT_NEAR(m.prob_at_least(a) + m.prob_below(a), 1.0, 1e-12);
      ASSERT_NEAR(m.prob_at_most(a) + m.prob_above(a), 1.0, 1e-12);
      ASSERT_GE(m.prob_at_least(a), m.prob_above(a));
    }
  }
}

TEST(ShocksProperty, ProductTailIsProductOfMarginals) {
  ShockDistribution d({Marginal::uniform(0, 2), Marginal::exponential(1.0)});
  CounterRng rng(10, "product", 0);
  for (int i = 0; i < 1000; ++i) {
    ShockVector v{uniform_between(rng, 0, 2), uniform_between(rng, 0, 3)};
    ASSERT_NEAR(tail_mass_above(d, v),
                d.marginal(0).prob_at_least(v[0]) * d.marginal(1).prob_at_least(v[1]), 1e-15);
    ASSERT_NEAR(tail_mass_below(d, v),
                d.marginal(0).prob_at_most(v[0]) * d.marginal(1).prob_at_most(v[1]), 1e-15);
  }
}
