#pragma once

// The transition map X_{k+1} = w(X_k, V_{k+1}) of a monotone Markov chain.

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "monostab/order.hpp"
#include "monostab/shocks.hpp"

namespace monostab {

/// Writes w(x, v) into `out`. Must be increasing jointly in (x, v).
using TransitionFn =
    std::function<void(std::span<const double> x, std::span<const double> v, std::span<double> out)>;

/// Upper bound on the max-norm Lipschitz constant of w(., v), when one is
/// known analytically for the family (e.g. ||A||_inf for a linear model).
using LipschitzBoundFn = std::function<std::optional<double>(const ShockVector& v)>;

struct ModelMetadata {
  std::string family;
  nlohmann::json params = nlohmann::json::object();
  std::map<std::string, bool> flags;
  std::map<std::string, double> values;
  std::vector<std::string> warnings;
};

/// Candidate (v', v'') with v' the high shock and v'' the low shock.
struct ShockPair {
  ShockVector v_hi;
  ShockVector v_lo;
};

struct ModelSpec {
  StateSpace state_space;
  ShockSpace shock_space;
  ShockDistribution shocks;
  TransitionFn transition;
  ModelMetadata metadata;
  LipschitzBoundFn lipschitz_bound;
  std::optional<ShockPair> default_pair;
  std::vector<StateVector> default_test_points;
};

/// Immutable after construction; safe to share across threads.
class TransitionModel {
 public:
  explicit TransitionModel(ModelSpec spec);

  std::size_t state_dim() const noexcept { return spec_.state_space.dimension(); }
  std::size_t shock_dim() const noexcept { return spec_.shock_space.dimension(); }
  const StateSpace& state_space() const noexcept { return spec_.state_space; }
  const ShockSpace& shock_space() const noexcept { return spec_.shock_space; }
  const ShockDistribution& shocks() const noexcept { return spec_.shocks; }
  const ModelMetadata& metadata() const noexcept { return spec_.metadata; }
  const std::optional<ShockPair>& default_pair() const noexcept { return spec_.default_pair; }
  const std::vector<StateVector>& default_test_points() const noexcept {
    return spec_.default_test_points;
  }

  /// w(x, v), with x checked against S, v against E and the result against S.
  StateVector apply(const StateVector& x, const ShockVector& v) const;

  ShockVector sample_shock(CounterRng& rng) const { return spec_.shocks.sample(rng); }

  std::optional<double> lipschitz_bound(const ShockVector& v) const;

 private:
  ModelSpec spec_;
};

/// Finite box inside S used for drawing test states: each coordinate is the
/// intersection of its interval with [-radius, radius] (shifted to
/// [lower, lower + radius] when that intersection is empty). Open endpoints
/// are moved one ulp inwards.
OrderInterval sampling_box(const StateSpace& space, double radius);

/// Uniform draw from a finite order interval.
StateVector sample_uniform(const OrderInterval& box, CounterRng& rng);

}  // namespace monostab
