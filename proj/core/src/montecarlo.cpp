#include "monostab/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include <boost/math/distributions/beta.hpp>

#include "parallel.hpp"

namespace monostab {

namespace {

void require_start_in_space(const TransitionModel& model, const StateVector& x) {
  if (x.size() != model.state_dim()) {
    throw DimensionMismatch("start has dimension " + std::to_string(x.size()) + ", model has " +
                            std::to_string(model.state_dim()));
  }
  if (!model.state_space().contains(x)) {
    throw DomainError("start " + to_string(x) + " is outside " + model.state_space().describe());
  }
}

StateVector advance(const TransitionModel& model, StateVector x, std::size_t steps, CounterRng& rng) {
  for (std::size_t k = 0; k < steps; ++k) x = model.apply(x, model.sample_shock(rng));
  return x;
}

std::vector<double> coordinate(const std::vector<StateVector>& samples, std::size_t i,
                               std::size_t count) {
  std::vector<double> out(count);
  for (std::size_t j = 0; j < count; ++j) out[j] = samples[j][i];
  return out;
}

}  // namespace

Trajectory simulate(const TransitionModel& model, const StateVector& x0, std::size_t horizon,
                    CounterRng& rng) {
  if (horizon == 0) throw DomainError("simulation horizon must be at least 1");
  require_start_in_space(model, x0);
  Trajectory t{.start = x0, .states = {}, .stream_key = rng.key()};
  t.states.reserve(horizon + 1);
  t.states.push_back(x0);
  for (std::size_t k = 0; k < horizon; ++k) {
    t.states.push_back(model.apply(t.states.back(), model.sample_shock(rng)));
  }
  return t;
}

std::vector<Trajectory> simulate_replications(const TransitionModel& model, const StateVector& x0,
                                              std::size_t horizon, std::size_t n_reps,
                                              std::uint64_t seed, std::size_t workers) {
  using Chunk = std::vector<Trajectory>;
  auto chunks = detail::parallel_chunks<Chunk>(
      n_reps, workers, [&](std::size_t begin, std::size_t end, Chunk& out) {
        for (std::size_t r = begin; r < end; ++r) {
          CounterRng rng(seed, "simulate", r);
          out.push_back(simulate(model, x0, horizon, rng));
        }
      });
  std::vector<Trajectory> all;
  all.reserve(n_reps);
  for (auto& c : chunks) std::move(c.begin(), c.end(), std::back_inserter(all));
  return all;
}

CouplingResult coupling_test(const TransitionModel& model, const StateVector& x_low,
                             const StateVector& x_high, std::size_t horizon, std::size_t n_reps,
                             std::uint64_t seed, std::size_t workers) {
  require_start_in_space(model, x_low);
  require_start_in_space(model, x_high);
  if (!leq(x_low, x_high)) {
    throw NotOrdered("coupling needs x_low <= x_high, got " + to_string(x_low) + " and " +
                     to_string(x_high));
  }
  constexpr std::size_t kMaxWitnesses = 10;

  auto chunks = detail::parallel_chunks<CouplingResult>(
      n_reps, workers, [&](std::size_t begin, std::size_t end, CouplingResult& out) {
        for (std::size_t r = begin; r < end; ++r) {
          CounterRng rng(seed, "coupling", r);
          StateVector lo = x_low;
          StateVector hi = x_high;
          for (std::size_t k = 1; k <= horizon; ++k) {
            const ShockVector v = model.sample_shock(rng);
            lo = model.apply(lo, v);
            hi = model.apply(hi, v);
            if (!leq(lo, hi)) {
              ++out.violations;
              if (out.witnesses.size() < kMaxWitnesses) out.witnesses.push_back({r, k, lo, hi});
            }
          }
          out.max_final_gap = std::max(out.max_final_gap, max_norm_distance(lo, hi));
        }
      });

  CouplingResult result{.reps = n_reps, .horizon = horizon};
  for (auto& c : chunks) {
    result.violations += c.violations;
    result.max_final_gap = std::max(result.max_final_gap, c.max_final_gap);
    for (auto& w : c.witnesses) {
      if (result.witnesses.size() < kMaxWitnesses) result.witnesses.push_back(std::move(w));
    }
  }
  return result;
}

double binomial_sigma(double p, std::size_t n) {
  if (n == 0) return 0.0;
  return std::sqrt(std::max(0.0, p * (1.0 - p)) / static_cast<double>(n));
}

BinomialEstimate binomial_estimate(std::size_t successes, std::size_t trials) {
  if (trials == 0) throw DomainError("binomial estimate needs at least one trial");
  if (successes > trials) throw DomainError("more successes than trials");
  BinomialEstimate b{.successes = successes, .trials = trials};
  const double n = static_cast<double>(trials);
  b.estimate = static_cast<double>(successes) / n;

  if (successes == 0) {
    b.ci_low = 0.0;
    b.ci_high = std::min(1.0, 3.0 / n);
  } else if (successes == trials) {
    b.ci_low = std::max(0.0, 1.0 - 3.0 / n);
    b.ci_high = 1.0;
  } else {
    const double half = 1.959963984540054 * binomial_sigma(b.estimate, trials);
    b.ci_low = std::max(0.0, b.estimate - half);
    b.ci_high = std::min(1.0, b.estimate + half);
  }

  const double k = static_cast<double>(successes);
  constexpr double alpha = 0.05;
  b.exact_low = successes == 0
                    ? 0.0
                    : boost::math::quantile(boost::math::beta_distribution<>(k, n - k + 1.0), alpha / 2);
  b.exact_high = successes == trials ? 1.0
                                     : boost::math::quantile(
                                           boost::math::beta_distribution<>(k + 1.0, n - k),
                                           1.0 - alpha / 2);
  return b;
}

CrossingResult crossing_probability(const TransitionModel& model, const StateVector& x_high,
                                    const StateVector& x_low, std::size_t m, std::size_t n_reps,
                                    std::uint64_t seed, std::size_t workers) {
  if (m == 0) throw DomainError("crossing step m must be at least 1");
  if (n_reps == 0) throw DomainError("crossing needs at least one replication");
  require_start_in_space(model, x_high);
  require_start_in_space(model, x_low);

  auto chunks = detail::parallel_chunks<std::size_t>(
      n_reps, workers, [&](std::size_t begin, std::size_t end, std::size_t& hits) {
        for (std::size_t r = begin; r < end; ++r) {
          CounterRng rng_hi(seed, "crossing/high", r);
          CounterRng rng_lo(seed, "crossing/low", r);
          const StateVector hi = advance(model, x_high, m, rng_hi);
          const StateVector lo = advance(model, x_low, m, rng_lo);
          if (leq(hi, lo)) ++hits;
        }
      });
  std::size_t hits = 0;
  for (auto h : chunks) hits += h;
  return CrossingResult{.m = m, .probability = binomial_estimate(hits, n_reps)};
}

EmpiricalDistribution stationary_samples(const TransitionModel& model, const StateVector& x0,
                                         std::size_t burn_in, std::size_t n_samples,
                                         std::size_t thinning, CounterRng& rng) {
  if (n_samples == 0) throw DomainError("need at least one stationary sample");
  if (thinning == 0) throw DomainError("thinning must be at least 1");
  require_start_in_space(model, x0);
  EmpiricalDistribution d{.samples = {}, .start = x0, .burn_in = burn_in, .thinning = thinning,
                          .stream_key = rng.key()};
  d.samples.reserve(n_samples);
  StateVector x = advance(model, x0, burn_in, rng);
  for (std::size_t j = 0; j < n_samples; ++j) {
    x = advance(model, std::move(x), thinning, rng);
    d.samples.push_back(x);
  }
  return d;
}

std::string to_string(Metric m) {
  return m == Metric::kKolmogorov ? "kolmogorov" : "wasserstein1";
}

Metric metric_from_string(const std::string& name) {
  if (name == "kolmogorov" || name == "ks") return Metric::kKolmogorov;
  if (name == "wasserstein1" || name == "w1") return Metric::kWasserstein1;
  throw ConfigError("unknown metric '" + name + "' (expected kolmogorov or wasserstein1)");
}

double kolmogorov_distance(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw DomainError("distance between empty sample sets");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const auto na = static_cast<std::int64_t>(a.size());
  const auto nb = static_cast<std::int64_t>(b.size());
  std::int64_t i = 0;
  std::int64_t j = 0;
  // |i/na - j/nb| = |i nb - j na| / (na nb), compared in integers.
  std::int64_t best = 0;
  while (i < na || j < nb) {
    const double x = j == nb || (i < na && a[i] <= b[j]) ? a[i] : b[j];
    while (i < na && a[i] == x) ++i;
    while (j < nb && b[j] == x) ++j;
    best = std::max(best, std::abs(i * nb - j * na));
  }
  return static_cast<double>(best) / (static_cast<double>(na) * static_cast<double>(nb));
}

double wasserstein1_distance(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw DomainError("distance between empty sample sets");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const std::uint64_t na = a.size();
  const std::uint64_t nb = b.size();
  // Quantile breakpoints i/na and j/nb, kept in units of 1/(na nb).
  std::uint64_t i = 0;
  std::uint64_t j = 0;
  std::uint64_t pos = 0;
  double total = 0.0;
  while (i < na && j < nb) {
    const std::uint64_t next_a = (i + 1) * nb;
    const std::uint64_t next_b = (j + 1) * na;
    const std::uint64_t next = std::min(next_a, next_b);
    total += static_cast<double>(next - pos) * std::abs(a[i] - b[j]);
    pos = next;
    if (next_a == next) ++i;
    if (next_b == next) ++j;
  }
  return total / (static_cast<double>(na) * static_cast<double>(nb));
}

std::vector<double> marginal_distance(const EmpiricalDistribution& a, const EmpiricalDistribution& b,
                                      Metric metric) {
  if (a.samples.empty() || b.samples.empty()) {
    throw DomainError("distance between empty sample sets");
  }
  const std::size_t n = a.samples.front().size();
  if (b.samples.front().size() != n) {
    throw DimensionMismatch("sample sets have dimensions " + std::to_string(n) + " and " +
                            std::to_string(b.samples.front().size()));
  }
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto xa = coordinate(a.samples, i, a.samples.size());
    auto xb = coordinate(b.samples, i, b.samples.size());
    out[i] = metric == Metric::kKolmogorov ? kolmogorov_distance(std::move(xa), std::move(xb))
                                           : wasserstein1_distance(std::move(xa), std::move(xb));
  }
  return out;
}

std::vector<double> default_radii(const std::vector<StateVector>& starts) {
  double r0 = 1.0;
  for (const auto& s : starts) r0 = std::max(r0, max_norm(s));
  std::vector<double> radii;
  for (int j = 0; j <= 20; ++j) radii.push_back(std::ldexp(r0, j));
  return radii;
}

TightnessReport tightness_diagnostic(const TransitionModel& model,
                                     const std::vector<StateVector>& starts, std::size_t horizon,
                                     std::size_t n_reps, const std::vector<double>& radii,
                                     std::uint64_t seed, std::size_t workers,
                                     std::vector<std::size_t> checkpoints) {
  if (starts.empty()) throw DomainError("tightness needs at least one start");
  if (n_reps == 0) throw DomainError("tightness needs at least one replication");
  if (radii.empty()) throw DomainError("tightness needs at least one radius");
  for (std::size_t r = 1; r < radii.size(); ++r) {
    if (!(radii[r] > radii[r - 1])) throw DomainError("tightness radii must be increasing");
  }
  for (const auto& s : starts) require_start_in_space(model, s);

  if (checkpoints.empty()) {
    const std::size_t step = std::max<std::size_t>(1, horizon / 20);
    for (std::size_t k = 0; k <= horizon; k += step) checkpoints.push_back(k);
    if (checkpoints.back() != horizon) checkpoints.push_back(horizon);
  }
  std::sort(checkpoints.begin(), checkpoints.end());
  checkpoints.erase(std::unique(checkpoints.begin(), checkpoints.end()), checkpoints.end());
  if (checkpoints.back() > horizon) throw DomainError("tightness checkpoint beyond horizon");

  TightnessReport report{.starts = starts, .horizon = horizon, .reps = n_reps,
                         .checkpoints = checkpoints, .radii = radii};
  const std::size_t nk = checkpoints.size();
  const std::size_t nr = radii.size();

  using Counts = std::vector<std::size_t>;  // [k * nr + r]
  for (std::size_t s = 0; s < starts.size(); ++s) {
    const std::string purpose = "tightness/" + std::to_string(s);
    auto chunks = detail::parallel_chunks<Counts>(
        n_reps, workers, [&](std::size_t begin, std::size_t end, Counts& counts) {
          counts.assign(nk * nr, 0);
          for (std::size_t rep = begin; rep < end; ++rep) {
            CounterRng rng(seed, purpose, rep);
            StateVector x = starts[s];
            std::size_t step = 0;
            for (std::size_t k = 0; k < nk; ++k) {
              x = advance(model, std::move(x), checkpoints[k] - step, rng);
              step = checkpoints[k];
              const double norm = max_norm(x);
              for (std::size_t r = 0; r < nr; ++r) {
                if (norm > radii[r]) ++counts[k * nr + r];
              }
            }
          }
        });
    Counts total(nk * nr, 0);
    for (const auto& c : chunks) {
      for (std::size_t i = 0; i < c.size(); ++i) total[i] += c[i];
    }
    auto& table = report.mass_outside.emplace_back(nk, std::vector<double>(nr));
    for (std::size_t k = 0; k < nk; ++k) {
      for (std::size_t r = 0; r < nr; ++r) {
        table[k][r] = static_cast<double>(total[k * nr + r]) / static_cast<double>(n_reps);
      }
    }
  }

  report.epsilons = {0.1, 0.01};
  report.pass = true;
  for (double eps : report.epsilons) {
    std::optional<double> found;
    for (std::size_t r = 0; r < nr && !found; ++r) {
      bool ok = true;
      for (const auto& table : report.mass_outside) {
        for (const auto& row : table) ok = ok && row[r] <= eps;
      }
      if (ok) found = radii[r];
    }
    report.containing_radius.push_back(found);
    report.pass = report.pass && found.has_value();
  }
  return report;
}

ConvergenceReport convergence_report(const TransitionModel& model,
                                     const std::vector<StateVector>& starts, std::size_t burn_in,
                                     std::size_t n_samples, std::size_t thinning, Metric metric,
                                     double threshold, std::uint64_t seed, std::size_t workers) {
  if (starts.size() < 2) throw DomainError("convergence needs at least two starts");
  if (!(threshold > 0.0)) throw DomainError("convergence threshold must be positive");

  ConvergenceReport report{.starts = starts, .metric = metric, .threshold = threshold,
                           .burn_in = burn_in, .n_samples = n_samples, .thinning = thinning};
  for (std::size_t c = 1; c <= 10; ++c) {
    const std::size_t count = std::max<std::size_t>(1, n_samples * c / 10);
    if (report.checkpoints.empty() || report.checkpoints.back() != count) {
      report.checkpoints.push_back(count);
    }
  }

  using Chunk = std::vector<EmpiricalDistribution>;
  auto chunks = detail::parallel_chunks<Chunk>(
      starts.size(), workers, [&](std::size_t begin, std::size_t end, Chunk& out) {
        for (std::size_t s = begin; s < end; ++s) {
          CounterRng rng(seed, "stationary", s);
          out.push_back(stationary_samples(model, starts[s], burn_in, n_samples, thinning, rng));
        }
      });
  std::vector<EmpiricalDistribution> dists;
  for (auto& c : chunks) std::move(c.begin(), c.end(), std::back_inserter(dists));

  const std::size_t n = model.state_dim();
  report.pass = true;
  for (std::size_t a = 0; a < dists.size(); ++a) {
    for (std::size_t b = a + 1; b < dists.size(); ++b) {
      ConvergencePair pair{.first = a, .second = b};
      for (std::size_t count : report.checkpoints) {
        std::vector<double> row(n);
        for (std::size_t i = 0; i < n; ++i) {
          auto xa = coordinate(dists[a].samples, i, count);
          auto xb = coordinate(dists[b].samples, i, count);
          row[i] = metric == Metric::kKolmogorov ? kolmogorov_distance(std::move(xa), std::move(xb))
                                                 : wasserstein1_distance(std::move(xa), std::move(xb));
        }
        pair.curve.push_back(std::move(row));
      }
      pair.final_distance = pair.curve.back();
      for (double d : pair.final_distance) {
        report.max_final_distance = std::max(report.max_final_distance, d);
        report.pass = report.pass && d < threshold;
      }
      report.pairs.push_back(std::move(pair));
    }
  }
  return report;
}

}  // namespace monostab
