#pragma once

// Stability certificates for monotone chains.
//
// The pipeline: check that (v_hi, v_lo) is an ordered normal pair, establish
// a unique fixed point for w(., v_lo) or w(., v_hi) (condition i) by one of
// four routes, find bounding points y_lo <= x <= y_hi with
// y_lo <= w(y_lo, v_lo) and w(y_hi, v_hi) <= y_hi for each test point
// (condition ii), and build the splitting certificate: the monotone limits
// C (under v_hi, from below) and C* (under v_lo, from above), the split point
// x* = (C + C*) / 2 and the number m of transitions after which both chains
// have crossed x*. The crossing probability is then at least
// (P(V >= v_hi) P(V <= v_lo))^m.
//
// m counts applications of w. trace[0] is the start and trace[m] the state
// after m transitions.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "monostab/analysis.hpp"
#include "monostab/montecarlo.hpp"

namespace monostab {

struct OrderedNormalPair {
  ShockPair shocks;
  /// P(V >= v_hi)
  double p_up = 0.0;
  /// P(V <= v_lo)
  double p_down = 0.0;
  /// Number of states at which w(x, v_hi) > w(x, v_lo) was checked.
  std::size_t dominance_samples = 0;
};

/// Checks v_lo < v_hi, positive tail masses and strict dominance
/// w(x, v_lo) < w(x, v_hi) on n_x_samples random states of
/// sampling_box(S, 100), the corners of that box and the extreme elements of S.
/// Throws NotOrdered, ZeroTailMass or DominanceViolation (with the witness).
OrderedNormalPair verify_normal_pair(const TransitionModel& model, const ShockVector& v_hi,
                                     const ShockVector& v_lo, std::size_t n_x_samples,
                                     CounterRng& rng);

enum class BoundSource { kExtremeElement, kSearch };
std::string to_string(BoundSource s);

struct BoundingPair {
  StateVector x;
  StateVector y_lo;
  StateVector y_hi;
  BoundSource lo_source = BoundSource::kSearch;
  BoundSource hi_source = BoundSource::kSearch;
  /// Candidates evaluated by the search (0 when both sides used extreme elements).
  std::size_t search_steps = 0;
  /// max_i (y_lo - w(y_lo, v_lo))_i, <= 0
  double lo_residual = 0.0;
  /// max_i (w(y_hi, v_hi) - y_hi)_i, <= 0
  double hi_residual = 0.0;
};

/// Per side: the least (greatest) element of S when it exists; otherwise the
/// constant vectors at min_i x_i - t max(1, |min_i x_i|) (resp. max_i x_i + ...)
/// for t = 0, 1, 2, 4, ... while the offset stays within search_cap. The
/// result is re-checked exactly against y_lo <= x, y_lo <= w(y_lo, v_lo),
/// y_hi >= x and y_hi >= w(y_hi, v_hi). Throws SearchCapExceeded.
BoundingPair find_bounding_pair(const TransitionModel& model, const ShockPair& pair,
                                const StateVector& x, double search_cap = 1e9);

struct SplittingOptions {
  double tol = 1e-9;
  std::size_t max_iter = 10'000;
  double search_cap = 1e9;
};

struct SplittingCertificate {
  OrderedNormalPair pair;
  StateVector x_low;
  StateVector x_high;
  /// Starts of the two chains; differ from x_low / x_high when substituted
  /// by bounding points.
  StateVector z_start;
  StateVector y_start;
  bool z_substituted = false;
  bool y_substituted = false;
  StateVector C;
  StateVector C_star;
  StateVector x_split;
  std::size_t m = 0;
  double prob_bound = 0.0;
  /// z_0 = z_start, z_{k+1} = w(z_k, v_hi); y_0 = y_start, y_{k+1} = w(y_k, v_lo).
  /// Each runs to its limit, and at least to index m.
  std::vector<StateVector> trace_z;
  std::vector<StateVector> trace_y;
  double residual_z = 0.0;
  double residual_y = 0.0;
};

/// Requires x_low <= x_high. A start that does not move monotonically toward
/// its limit (x_low <= w(x_low, v_hi) fails, or x_high >= w(x_high, v_lo)
/// fails) is replaced by the matching bounding point. Throws NotOrdered,
/// FixedPointsNotSeparated (unless C - C* > 100 tol in every coordinate) and
/// any iteration or search error.
SplittingCertificate build_splitting_certificate(const TransitionModel& model,
                                                 const OrderedNormalPair& pair,
                                                 const StateVector& x_low,
                                                 const StateVector& x_high,
                                                 const SplittingOptions& options = {});

/// Re-derives the certificate's claims from its stored data: both traces
/// replay bit-exactly through apply, are monotone, end within tol, cross
/// x_split at m and the bound equals (p_up p_down)^m. Returns the failed
/// checks (empty when consistent).
std::vector<std::string> audit_certificate(const TransitionModel& model,
                                           const SplittingCertificate& cert, double tol);

enum class Route { kDirect, kContraction, kConcave, kCompact };
/// "direct", "contraction", "concave", "compact"
std::string to_string(Route r);
Route route_from_string(const std::string& name);
/// "direct-unique-fp", "contraction", "concave-bracket", "compact-space"
std::string evidence_name(Route r);

struct RouteSpec {
  Route kind = Route::kDirect;
  /// Bracket points for the concave route.
  std::optional<StateVector> a;
  std::optional<StateVector> b;
};

struct CertifyOptions {
  double tol = 1e-9;
  std::size_t max_iter = 10'000;
  double search_cap = 1e9;
  std::size_t dominance_samples = 1000;
  /// Half-width of the box used for sampled checks on unbounded spaces.
  double sampling_radius = 100.0;
  std::size_t contraction_pairs = 2000;
  std::size_t concavity_triples = 2000;
  double concavity_tol = 1e-9;
  std::size_t tightness_horizon = 200;
  std::size_t tightness_reps = 1000;
  /// Empty means default_radii(test points).
  std::vector<double> tightness_radii;
  /// Replications of the crossing check at the certified m; 0 skips it.
  std::size_t crossing_reps = 100'000;
  std::uint64_t seed = 12345;
  std::size_t workers = 1;
};

struct BracketCheck {
  StateVector a;
  StateVector b;
  StateVector w_a_hi;
  StateVector w_a_lo;
  StateVector w_b_hi;
  StateVector w_b_lo;
  bool pass = false;
};

struct ConditionI {
  bool established = false;
  /// Uniqueness probes (direct and compact routes).
  std::optional<UniquenessProbe> probe_lo;
  std::optional<UniquenessProbe> probe_hi;
  /// "v_lo" or "v_hi": the shock whose probe supported uniqueness.
  std::string supported_by;
  /// Contraction route.
  std::optional<double> analytic_bound_hi;
  std::optional<double> analytic_bound_lo;
  std::optional<ContractionEstimate> sampled_hi;
  std::optional<ContractionEstimate> sampled_lo;
  std::optional<OrderInterval> sampled_region;
  /// Concave route.
  std::optional<ConcavityVerdict> concavity_hi;
  std::optional<ConcavityVerdict> concavity_lo;
  std::optional<BracketCheck> bracket;
  /// Compact route.
  std::optional<bool> space_bounded;
  std::vector<std::string> notes;
};

struct ConditionIIPoint {
  StateVector x;
  std::optional<BoundingPair> bounds;
  std::string error;
};

struct ConditionII {
  bool established = false;
  std::vector<ConditionIIPoint> points;
};

struct CrossingCheck {
  CrossingResult result;
  double bound = 0.0;
  /// Binomial standard deviation at p = bound.
  double sigma = 0.0;
  /// estimate >= bound - 3 sigma
  bool sound = false;
};

struct StabilityReport {
  static constexpr const char* kCertified = "certified-modulo-numerics";

  ShockPair pair;
  std::optional<OrderedNormalPair> normal_pair;
  std::string normal_pair_error;
  RouteSpec route;
  std::vector<StateVector> test_points;
  ConditionI condition_i;
  ConditionII condition_ii;
  /// Certificate for (min of test points, max of test points).
  std::optional<SplittingCertificate> splitting;
  std::string splitting_error;
  /// Certificates for consecutive test points, when there are more than two.
  std::vector<SplittingCertificate> splitting_pairs;
  std::optional<TightnessReport> tightness;
  std::string tightness_error;
  std::optional<CrossingCheck> empirical_crossing;
  CertifyOptions options;
  bool certified = false;
  /// First failed stage: normal-pair-invalid, condition-i-unestablished,
  /// condition-ii-unestablished, splitting-failed, tightness-failed or
  /// crossing-check-failed. Empty when certified.
  std::string failure_reason;

  /// "certified-modulo-numerics" or "failed(<reason>)"
  std::string overall() const;
};

/// Runs the whole pipeline. Route prerequisites that are not met and errors
/// from individual stages are recorded in the report instead of thrown;
/// DimensionMismatch and DomainError on the inputs themselves still throw.
StabilityReport certify(const TransitionModel& model, const ShockPair& pair, const RouteSpec& route,
                        std::vector<StateVector> test_points, const CertifyOptions& options = {});

}  // namespace monostab
