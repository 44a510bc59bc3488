#pragma once

// Numerical checks on the deterministic maps x -> w(x, v) for a fixed shock v.
//
// None of these prove anything: uniqueness is "supported", contraction
// constants are sampled lower bounds and concavity is checked on random
// triples. The result types say so explicitly.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "monostab/model.hpp"

namespace monostab {

enum class Direction { kIncreasingFromBelow, kDecreasingFromAbove, kNonMonotone };
std::string to_string(Direction d);

struct IterationOptions {
  double tol = 1e-9;
  std::size_t max_iter = 10'000;
  bool keep_trace = false;
  /// After meeting tol, continue a monotone chain while it still moves
  /// forward and stays within tol (the total step count is still max_iter).
  bool polish = true;
};

struct FixedPointResult {
  StateVector point;
  /// Number of applications of w after x0 (0 when x0 is already fixed).
  std::size_t iterations = 0;
  /// ||w(point, v) - point||_inf
  double residual = 0.0;
  Direction direction = Direction::kNonMonotone;
  /// x0, w(x0), w(w(x0)), ..., point. Empty unless requested.
  std::vector<StateVector> trace;
};

/// Iterates x <- w(x, v) from x0 until ||w(x, v) - x||_inf <= tol.
///
/// The direction is read off x0 against w(x0, v). For monotone starts every
/// step is checked against the previous iterate; a break in the chain throws
/// MonotonicityViolation (it means w is not increasing). Throws
/// IterationLimitExceeded after max_iter steps and DomainError if an iterate
/// leaves S or is non-finite.
FixedPointResult iterate_map(const TransitionModel& model, const ShockVector& v,
                             const StateVector& x0, const IterationOptions& options = {});

enum class UniquenessVerdict { kSupported, kRefuted, kInconclusive };
std::string to_string(UniquenessVerdict v);

struct UniquenessProbe {
  UniquenessVerdict verdict = UniquenessVerdict::kInconclusive;
  std::vector<StateVector> starts;
  /// Limit reached from each start, or nullopt when that run failed.
  std::vector<std::optional<StateVector>> limits;
  std::vector<std::string> failures;
  /// The two limits furthest apart, when the verdict is refuted.
  std::optional<std::pair<StateVector, StateVector>> witnesses;
  /// Largest max-norm distance between two limits.
  double spread = 0.0;
};

/// Runs iterate_map from every start. Refuted when two limits differ by more
/// than 10 * tol; otherwise inconclusive if any run failed; otherwise supported.
UniquenessProbe probe_unique_fixed_point(const TransitionModel& model, const ShockVector& v,
                                         const std::vector<StateVector>& starts, double tol = 1e-9,
                                         std::size_t max_iter = 10'000);

struct ContractionEstimate {
  /// max ||w(x, v) - w(y, v)||_inf / ||x - y||_inf over the sampled pairs.
  /// Never an upper bound on the true Lipschitz constant.
  double constant_lower_bound = 0.0;
  std::size_t sample_count = 0;
  bool is_contraction_evidence = false;
  std::optional<std::pair<StateVector, StateVector>> worst_pair;
};

/// Samples `n_pairs` random pairs in `region` (snapped to a dyadic grid so
/// that linear maps are evaluated exactly), plus axis-perturbed pairs at the
/// region corners and the pair (low, high).
ContractionEstimate estimate_contraction(const TransitionModel& model, const ShockVector& v,
                                         const OrderInterval& region, std::size_t n_pairs,
                                         CounterRng& rng);

enum class ConcavityKind { kStrictlyConcaveEvidence, kConcaveNotStrict, kViolated };
std::string to_string(ConcavityKind k);

struct ConcavityWitness {
  StateVector x;
  StateVector y;
  double lambda;
  /// w_i(lambda x + (1 - lambda) y) - (lambda w_i(x) + (1 - lambda) w_i(y))
  double gap;
};

struct CoordinateConcavity {
  ConcavityKind verdict = ConcavityKind::kConcaveNotStrict;
  /// Most negative gap seen (0 if none was negative).
  double worst_violation = 0.0;
  std::optional<ConcavityWitness> witness;
  std::size_t strict_pairs = 0;
  double min_strict_gap = 0.0;
};

struct ConcavityVerdict {
  std::vector<CoordinateConcavity> coords;

  bool all_strict() const;
  bool any_violated() const;
};

/// Per coordinate i of w(., v): tests random-lambda and midpoint inequalities
/// on random pairs. A gap below -tol is a violation. Strict evidence needs
/// every comparable pair at max-norm distance >= max(1e-3, 1% of the widest
/// region side) to show a midpoint gap above tol.
ConcavityVerdict check_concavity(const TransitionModel& model, const ShockVector& v,
                                 const OrderInterval& region, std::size_t n_triples, double tol,
                                 CounterRng& rng);

}  // namespace monostab
