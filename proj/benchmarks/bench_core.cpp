#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "monostab/analysis.hpp"
#include "monostab/certificate.hpp"
#include "monostab/config.hpp"
#include "monostab/montecarlo.hpp"

using namespace monostab;

namespace {

TransitionModel load(const std::string& name) {
  return load_model_file(std::string(MONOSTAB_MODELS_DIR) + "/" + name + ".json");
}

const std::vector<std::string> kModels{"ar1", "ar2", "rca1", "portfolio", "resource", "piecewise_exp"};

void BM_Apply(benchmark::State& state) {
  auto m = load(kModels[state.range(0)]);
  CounterRng rng(1, "bench", 0);
  const StateVector x = m.default_test_points().back();
  const ShockVector v = m.sample_shock(rng);
  for (auto _ : state) benchmark::DoNotOptimize(m.apply(x, v));
  state.SetLabel(kModels[state.range(0)]);
}
BENCHMARK(BM_Apply)->DenseRange(0, 5);

void BM_IterateMap(benchmark::State& state) {
  auto m = load("resource");
  for (auto _ : state) benchmark::DoNotOptimize(iterate_map(m, ShockVector{0.25}, StateVector{0.0}));
}
BENCHMARK(BM_IterateMap);

void BM_SplittingCertificate(benchmark::State& state) {
  auto m = load("ar1");
  CounterRng rng(1, "normal-pair", 0);
  auto pair = verify_normal_pair(m, ShockVector{0.5}, ShockVector{-0.5}, 100, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_splitting_certificate(m, pair, StateVector{-1}, StateVector{1}));
  }
}
BENCHMARK(BM_SplittingCertificate);

void BM_Crossing(benchmark::State& state) {
  auto m = load("ar1");
  const auto reps = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(crossing_probability(m, StateVector{1}, StateVector{-1}, 2, reps, 7));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Crossing)->Arg(10000)->Arg(100000);

void BM_Coupling(benchmark::State& state) {
  auto m = load("portfolio");
  for (auto _ : state) {
    benchmark::DoNotOptimize(coupling_test(m, StateVector{0}, StateVector{10}, 100, 1000, 7));
  }
}
BENCHMARK(BM_Coupling);

void BM_MarginalDistance(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<double> a(n), b(n);
  CounterRng ra(1, "a", 0), rb(1, "b", 0);
  for (std::size_t i = 0; i < n; ++i) {
    a[i] = uniform_open01(ra);
    b[i] = uniform_open01(rb);
  }
  const bool ks = state.range(1) == 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ks ? kolmogorov_distance(a, b) : wasserstein1_distance(a, b));
  }
  state.SetLabel(ks ? "kolmogorov" : "wasserstein1");
}
BENCHMARK(BM_MarginalDistance)->Args({100000, 0})->Args({100000, 1});

}  // namespace

BENCHMARK_MAIN();
