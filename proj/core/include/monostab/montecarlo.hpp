#pragma once

// Empirical checks of what a certificate claims: order-preserving coupling,
// crossing probabilities, convergence of marginals from different starts and
// a tightness diagnostic.
//
// Replication r of a workflow draws from stream (seed, purpose, r), so every
// statistic below is identical for any worker count.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "monostab/model.hpp"

namespace monostab {

struct Trajectory {
  StateVector start;
  /// states[0] = start, states[k] = X_k; horizon + 1 entries.
  std::vector<StateVector> states;
  std::uint64_t stream_key = 0;
};

/// Runs the chain for `horizon` transitions with shocks from `rng`.
/// Throws DomainError if the state escapes S.
Trajectory simulate(const TransitionModel& model, const StateVector& x0, std::size_t horizon,
                    CounterRng& rng);

/// Replication r uses stream (seed, "simulate", r).
std::vector<Trajectory> simulate_replications(const TransitionModel& model, const StateVector& x0,
                                              std::size_t horizon, std::size_t n_reps,
                                              std::uint64_t seed, std::size_t workers = 1);

struct CouplingWitness {
  std::size_t rep;
  std::size_t step;
  StateVector low_state;
  StateVector high_state;
};

struct CouplingResult {
  static constexpr const char* kMode = "shared-shock";
  std::size_t reps = 0;
  std::size_t horizon = 0;
  /// Steps (over all reps) where X_high,k >= X_low,k failed.
  std::size_t violations = 0;
  /// First violations by (rep, step), at most 10.
  std::vector<CouplingWitness> witnesses;
  /// max over reps of ||X_high,T - X_low,T||_inf
  double max_final_gap = 0.0;
};

/// Runs pairs of chains from x_low <= x_high with identical shock sequences
/// (stream (seed, "coupling", r)) and counts order violations.
CouplingResult coupling_test(const TransitionModel& model, const StateVector& x_low,
                             const StateVector& x_high, std::size_t horizon, std::size_t n_reps,
                             std::uint64_t seed, std::size_t workers = 1);

struct BinomialEstimate {
  std::size_t successes = 0;
  std::size_t trials = 0;
  double estimate = 0.0;
  /// 95% normal-approximation interval; rule of three when no successes
  /// (or no failures) were seen.
  double ci_low = 0.0;
  double ci_high = 1.0;
  /// 95% Clopper-Pearson interval.
  double exact_low = 0.0;
  double exact_high = 1.0;
};

BinomialEstimate binomial_estimate(std::size_t successes, std::size_t trials);

/// sqrt(p (1 - p) / n)
double binomial_sigma(double p, std::size_t n);

struct CrossingResult {
  static constexpr const char* kMode = "independent-stream";
  std::size_t m = 0;
  BinomialEstimate probability;
};

/// Fraction of replications in which the chain from x_high is <= the chain
/// from x_low after m transitions. The two chains use independent streams
/// (seed, "crossing/high", r) and (seed, "crossing/low", r).
CrossingResult crossing_probability(const TransitionModel& model, const StateVector& x_high,
                                    const StateVector& x_low, std::size_t m, std::size_t n_reps,
                                    std::uint64_t seed, std::size_t workers = 1);

struct EmpiricalDistribution {
  std::vector<StateVector> samples;
  StateVector start;
  std::size_t burn_in = 0;
  std::size_t thinning = 1;
  std::uint64_t stream_key = 0;
};

/// One trajectory of burn_in + n_samples * thinning transitions; sample j
/// (1-based) is the state after burn_in + j * thinning transitions.
EmpiricalDistribution stationary_samples(const TransitionModel& model, const StateVector& x0,
                                         std::size_t burn_in, std::size_t n_samples,
                                         std::size_t thinning, CounterRng& rng);

enum class Metric { kKolmogorov, kWasserstein1 };
std::string to_string(Metric m);
/// "kolmogorov" or "wasserstein1"; throws ConfigError otherwise.
Metric metric_from_string(const std::string& name);

/// sup_x |F_a(x) - F_b(x)| of the two empirical CDFs.
double kolmogorov_distance(std::vector<double> a, std::vector<double> b);
/// Integral over u in (0, 1) of |Q_a(u) - Q_b(u)|; for equal sizes this is
/// the mean absolute difference of the sorted samples.
double wasserstein1_distance(std::vector<double> a, std::vector<double> b);

/// Per-coordinate distance between the marginals of two sample sets.
std::vector<double> marginal_distance(const EmpiricalDistribution& a, const EmpiricalDistribution& b,
                                      Metric metric);

struct TightnessReport {
  std::vector<StateVector> starts;
  std::size_t horizon = 0;
  std::size_t reps = 0;
  std::vector<std::size_t> checkpoints;
  std::vector<double> radii;
  /// mass_outside[s][k][r]: fraction of reps from start s with ||X_k||_inf > radii[r]
  /// at checkpoint k.
  std::vector<std::vector<std::vector<double>>> mass_outside;
  std::vector<double> epsilons;
  /// Smallest radius that keeps every start and checkpoint at or below each
  /// epsilon, if any.
  std::vector<std::optional<double>> containing_radius;
  bool pass = false;
};

/// Simulates n_reps chains from each start (stream (seed, "tightness/<s>", r))
/// and tabulates the mass outside each radius. Passes when, for eps = 0.1 and
/// eps = 0.01, some radius keeps all checkpoints at or below eps. Empty
/// `checkpoints` means 0, h, 2h, ..., horizon with h = max(1, horizon / 20).
TightnessReport tightness_diagnostic(const TransitionModel& model,
                                     const std::vector<StateVector>& starts, std::size_t horizon,
                                     std::size_t n_reps, const std::vector<double>& radii,
                                     std::uint64_t seed, std::size_t workers = 1,
                                     std::vector<std::size_t> checkpoints = {});

/// Radii r0 * 2^j, j = 0..20, with r0 = max(1, largest start norm).
std::vector<double> default_radii(const std::vector<StateVector>& starts);

struct ConvergencePair {
  std::size_t first = 0;
  std::size_t second = 0;
  /// curve[c][i]: distance on coordinate i using the first checkpoints[c] samples.
  std::vector<std::vector<double>> curve;
  std::vector<double> final_distance;
};

struct ConvergenceReport {
  std::vector<StateVector> starts;
  Metric metric = Metric::kKolmogorov;
  double threshold = 0.0;
  std::size_t burn_in = 0;
  std::size_t n_samples = 0;
  std::size_t thinning = 1;
  std::vector<std::size_t> checkpoints;
  std::vector<ConvergencePair> pairs;
  double max_final_distance = 0.0;
  bool pass = false;
};

/// Stationary samples from each start (stream (seed, "stationary", s)) and
/// pairwise marginal distances at ten sample-count checkpoints. Passes iff
/// every final distance is below the threshold.
ConvergenceReport convergence_report(const TransitionModel& model,
                                     const std::vector<StateVector>& starts, std::size_t burn_in,
                                     std::size_t n_samples, std::size_t thinning, Metric metric,
                                     double threshold, std::uint64_t seed, std::size_t workers = 1);

}  // namespace monostab
