// Invariants checked on random inputs from hand-rolled generators.
#include <gtest/gtest.h>

#include "monostab/certificate.hpp"
#include "monostab/montecarlo.hpp"
#include "support/models.hpp"

using namespace monostab;
using namespace testsupport;

namespace {

// Ordered pair lo <= hi: two draws combined by min/max, with some coordinates
// forced equal so ties are exercised.
template <class Tag, class Draw>
std::pair<RealVector<Tag>, RealVector<Tag>> ordered_pair(CounterRng& rng, Draw&& draw) {
  RealVector<Tag> a = draw(), b = draw();
  std::vector<double> lo(a.size()), hi(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    lo[i] = std::min(a[i], b[i]);
    hi[i] = std::max(a[i], b[i]);
    if (pick(rng, 4) == 0) hi[i] = lo[i];
  }
  return {RealVector<Tag>(std::move(lo)), RealVector<Tag>(std::move(hi))};
}

void check_monotone_and_closed(const TransitionModel& m, std::uint64_t seed, int n_pairs = 10000) {
  CounterRng rng(seed, "monotone-pairs", 0);
  const OrderInterval box = sampling_box(m.state_space(), 100.0);
  for (int i = 0; i < n_pairs; ++i) {
    auto [x_lo, x_hi] = ordered_pair<StateTag>(rng, [&] { return sample_uniform(box, rng); });
    auto [v_lo, v_hi] = ordered_pair<ShockTag>(rng, [&] { return m.sample_shock(rng); });
    const StateVector a = m.apply(x_lo, v_lo);
    const StateVector b = m.apply(x_hi, v_hi);
    ASSERT_TRUE(leq(a, b)) << m.metadata().family << ": w(" << to_string(x_lo) << ", "
                           << to_string(v_lo) << ") = " << to_string(a) << " vs w("
                           << to_string(x_hi) << ", " << to_string(v_hi) << ") = " << to_string(b);
    ASSERT_TRUE(m.state_space().contains(a));
    ASSERT_TRUE(m.state_space().contains(b));
  }
}

TransitionModel random_ar(CounterRng& rng) {
  const std::size_t n = 1 + pick(rng, 3);
  Matrix A(n, std::vector<double>(n));
  for (auto& row : A) {
    for (auto& a : row) a = pick(rng, 3) == 0 ? 0.0 : uniform_between(rng, 0, 0.8);
  }
  std::vector<Marginal> ms;
  for (std::size_t i = 0; i < n; ++i) ms.push_back(Marginal::uniform(-1, uniform_between(rng, 0, 2)));
  return make_ar1(A, ShockDistribution(ms));
}

TransitionModel random_resource(CounterRng& rng) {
  const std::size_t n = 1 + pick(rng, 2), k = 1 + pick(rng, 2);
  Tensor3 c(n, Matrix(k, std::vector<double>(n))), d = c;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      for (std::size_t l = 0; l < n; ++l) {
        c[i][j][l] = uniform_between(rng, 0.01, 0.99);
        d[i][j][l] = uniform_between(rng, 0.01, 0.99);
      }
    }
  }
  return make_resource(c, d, ShockDistribution(std::vector<Marginal>(n, Marginal::exponential(1.0))));
}

PiecewiseLinear random_increasing(CounterRng& rng, double max_slope) {
  std::vector<std::pair<double, double>> knots{{0.0, uniform_between(rng, 0, 1)}};
  for (int i = 0; i < 4; ++i) {
    const double x = knots.back().first + uniform_between(rng, 0.5, 5);
    knots.emplace_back(x, knots.back().second + uniform_between(rng, 0, max_slope) * (x - knots.back().first));
  }
  return PiecewiseLinear(knots);
}

TransitionModel random_rca(CounterRng& rng) {
  return make_rca1(random_increasing(rng, 1.0), Marginal::uniform(0, uniform_between(rng, 0.1, 2)),
                   Marginal::exponential(uniform_between(rng, 0.2, 3)));
}

TransitionModel random_portfolio(CounterRng& rng) {
  const double s1 = uniform_between(rng, 0, 0.5), s2 = uniform_between(rng, 0, 0.5);
  return make_portfolio(PiecewiseLinear::linear(s1), PiecewiseLinear::linear(s2),
                        Marginal::uniform(-0.5, 0.5), Marginal::uniform(-0.9, 1.0),
                        Marginal::uniform(-20, 5));
}

}  // namespace

TEST(MonotonicityProperty, ShippedModels) {
  std::uint64_t seed = 1;
  for (const auto& name : family_configs()) check_monotone_and_closed(builtin(name), seed++);
}

TEST(MonotonicityProperty, RandomFamilyInstances) {
  CounterRng rng(77, "random-models", 0);
  for (int t = 0; t < 10; ++t) {
    check_monotone_and_closed(random_ar(rng), 100 + t, 2000);
    check_monotone_and_closed(random_resource(rng), 200 + t, 2000);
    check_monotone_and_closed(random_rca(rng), 300 + t, 2000);
    check_monotone_and_closed(random_portfolio(rng), 400 + t, 2000);
  }
}

// Shared shocks keep ordered starts ordered, for every shipped model.
TEST(CouplingProperty, ShippedModelsPreserveOrder) {
  for (const auto& name : family_configs()) {
    auto m = builtin(name);
    const auto& pts = m.default_test_points();
    StateVector lo = pts.front(), hi = pts.front();
    for (const auto& p : pts) {
      lo = pointwise_min(lo, p);
      hi = pointwise_max(hi, p);
    }
    auto c = coupling_test(m, lo, hi, 100, 300, 5);
    EXPECT_EQ(c.violations, 0u) << name;
    if (!c.witnesses.empty()) {
      const auto& w = c.witnesses.front();
      ADD_FAILURE() << name << " rep " << w.rep << " step " << w.step << ": "
                    << to_string(w.low_state) << " vs " << to_string(w.high_state);
    }
  }
}

// Shared shocks with random ordered starts drawn inside the state space.
TEST(CouplingProperty, RandomOrderedStarts) {
  CounterRng rng(55, "coupling-starts", 0);
  for (const auto& name : family_configs()) {
    auto m = builtin(name);
    const OrderInterval box = sampling_box(m.state_space(), 20.0);
    for (int t = 0; t < 10; ++t) {
      auto [lo, hi] = ordered_pair<StateTag>(rng, [&] { return sample_uniform(box, rng); });
      auto c = coupling_test(m, lo, hi, 50, 20, t);
      ASSERT_EQ(c.violations, 0u) << name << " from " << to_string(lo) << " / " << to_string(hi);
    }
  }
}

// Iterating from below under v_hi and from above under v_lo gives monotone
// traces for every shipped model's default pair.
TEST(IterationProperty, TracesAreMonotone) {
  for (const auto& name : family_configs()) {
    auto m = builtin(name);
    ASSERT_TRUE(m.default_pair().has_value()) << name;
    const auto& pair = *m.default_pair();
    for (const auto& x : m.default_test_points()) {
      auto b = find_bounding_pair(m, pair, x);
      IterationOptions opts;
      opts.keep_trace = true;
      auto up = iterate_map(m, pair.v_hi, b.y_lo, opts);
      for (std::size_t k = 1; k < up.trace.size(); ++k) ASSERT_TRUE(leq(up.trace[k - 1], up.trace[k]));
      auto down = iterate_map(m, pair.v_lo, b.y_hi, opts);
      for (std::size_t k = 1; k < down.trace.size(); ++k) {
        ASSERT_TRUE(leq(down.trace[k], down.trace[k - 1]));
      }
      // the limit under the larger shock dominates
      ASSERT_TRUE(leq(down.point, up.point)) << name;
    }
  }
}

// Bounding pairs always satisfy their defining inequalities.
TEST(BoundingProperty, RandomTestPoints) {
  CounterRng rng(66, "bounding", 0);
  for (const auto& name : family_configs()) {
    auto m = builtin(name);
    const auto& pair = *m.default_pair();
    const OrderInterval box = sampling_box(m.state_space(), 1000.0);
    for (int t = 0; t < 50; ++t) {
      const StateVector x = sample_uniform(box, rng);
      auto b = find_bounding_pair(m, pair, x);
      ASSERT_TRUE(leq(b.y_lo, x));
      ASSERT_TRUE(leq(x, b.y_hi));
      ASSERT_TRUE(leq(b.y_lo, m.apply(b.y_lo, pair.v_lo))) << name;
      ASSERT_TRUE(leq(m.apply(b.y_hi, pair.v_hi), b.y_hi)) << name;
    }
  }
}
