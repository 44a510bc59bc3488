#pragma once

// Shock distributions: products of independent scalar marginals on R^k under
// the componentwise order. Tail masses come from closed-form CDFs, so the
// probability bounds in a certificate are exact up to rounding.

#include <string>
#include <variant>
#include <vector>

#include "monostab/order.hpp"
#include "monostab/rng.hpp"

namespace monostab {

struct UniformMarginal {
  double a;
  double b;
};

struct ExponentialMarginal {
  double rate;
};

/// Finite distribution. Atoms are kept sorted and distinct; weights sum to 1.
struct DiscreteMarginal {
  std::vector<double> atoms;
  std::vector<double> weights;
};

/// Normal(mean, sd) conditioned on [lo, hi]; either bound may be infinite.
struct TruncatedNormalMarginal {
  double mean;
  double sd;
  double lo;
  double hi;
};

class Marginal {
 public:
  using Variant = std::variant<UniformMarginal, ExponentialMarginal, DiscreteMarginal,
                               TruncatedNormalMarginal>;

  static Marginal uniform(double a, double b);
  static Marginal exponential(double rate);
  static Marginal discrete(std::vector<double> atoms, std::vector<double> weights);
  static Marginal point_mass(double value) { return discrete({value}, {1.0}); }
  static Marginal truncated_normal(double mean, double sd, double lo, double hi);

  const Variant& kind() const noexcept { return kind_; }
  std::string type_name() const;

  /// Inverse-CDF draw; consumes exactly one output of `rng`.
  double sample(CounterRng& rng) const;

  double prob_at_least(double x) const;  ///< P(V >= x)
  double prob_at_most(double x) const;   ///< P(V <= x)
  double prob_below(double x) const;     ///< P(V < x)
  double prob_above(double x) const;     ///< P(V > x)

  double mean() const;
  /// inf{x : P(V <= x) >= p} for p in (0, 1).
  double quantile(double p) const;
  /// Closed hull of the support.
  double support_lower() const;
  double support_upper() const;

 private:
  explicit Marginal(Variant kind) : kind_(std::move(kind)) {}
  Variant kind_;
};

class ShockDistribution {
 public:
  explicit ShockDistribution(std::vector<Marginal> marginals);

  std::size_t dimension() const noexcept { return marginals_.size(); }
  const Marginal& marginal(std::size_t i) const { return marginals_.at(i); }
  const std::vector<Marginal>& marginals() const noexcept { return marginals_; }

  /// One independent draw per coordinate, in coordinate order.
  ShockVector sample(CounterRng& rng) const;
  /// Componentwise quantile vector.
  ShockVector quantile(double p) const;
  std::vector<double> mean() const;

 private:
  std::vector<Marginal> marginals_;
};

/// P(V >= v) in the product order (closed upper tail).
double tail_mass_above(const ShockDistribution& dist, const ShockVector& v);
/// P(V <= v) in the product order (closed lower tail).
double tail_mass_below(const ShockDistribution& dist, const ShockVector& v);
/// P(V_i < v_i for every i).
double tail_mass_strictly_below(const ShockDistribution& dist, const ShockVector& v);
/// P(V_i > v_i for every i).
double tail_mass_strictly_above(const ShockDistribution& dist, const ShockVector& v);

}  // namespace monostab
