#include "monostab/shocks.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/math/distributions/normal.hpp>

namespace monostab {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

const boost::math::normal kStdNormal;

double phi_lower(double z) {
  if (z == -Interval::kInf) return 0.0;
  if (z == Interval::kInf) return 1.0;
  return boost::math::cdf(kStdNormal, z);
}

double phi_upper(double z) {
  if (z == -Interval::kInf) return 1.0;
  if (z == Interval::kInf) return 0.0;
  return boost::math::cdf(boost::math::complement(kStdNormal, z));
}

double density(double z) {
  if (std::isinf(z)) return 0.0;
  return boost::math::pdf(kStdNormal, z);
}

struct StandardizedBounds {
  double lo;
  double hi;
  double mass;
};

StandardizedBounds standardize(const TruncatedNormalMarginal& m) {
  const double zl = std::isinf(m.lo) ? m.lo : (m.lo - m.mean) / m.sd;
  const double zh = std::isinf(m.hi) ? m.hi : (m.hi - m.mean) / m.sd;
  // Subtract in whichever tail keeps precision.
  const double mass = zl >= 0.0 ? phi_upper(zl) - phi_upper(zh) : phi_lower(zh) - phi_lower(zl);
  return {zl, zh, mass};
}

double clamp01(double p) { return std::clamp(p, 0.0, 1.0); }

double tn_prob_at_least(const TruncatedNormalMarginal& m, double x) {
  if (x <= m.lo) return 1.0;
  if (x >= m.hi) return 0.0;
  const auto s = standardize(m);
  const double z = (x - m.mean) / m.sd;
  const double num = z >= 0.0 ? phi_upper(z) - phi_upper(s.hi) : phi_lower(s.hi) - phi_lower(z);
  return clamp01(num / s.mass);
}

}  // namespace

Marginal Marginal::uniform(double a, double b) {
  if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) {
    throw ConfigError("uniform marginal requires finite a < b");
  }
  return Marginal(UniformMarginal{a, b});
}

Marginal Marginal::exponential(double rate) {
  if (!std::isfinite(rate) || !(rate > 0.0)) {
    throw ConfigError("exponential marginal requires rate > 0");
  }
  return Marginal(ExponentialMarginal{rate});
}

Marginal Marginal::discrete(std::vector<double> atoms, std::vector<double> weights) {
  if (atoms.empty() || atoms.size() != weights.size()) {
    throw ConfigError("discrete marginal requires equally many atoms and weights (at least one)");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (!std::isfinite(atoms[i])) throw ConfigError("discrete atom must be finite");
    if (!std::isfinite(weights[i]) || weights[i] < 0.0) {
      throw ConfigError("discrete weights must be finite and >= 0");
    }
    total += weights[i];
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw ConfigError("discrete weights must sum to 1 (got " + std::to_string(total) + ")");
  }
  std::vector<std::size_t> order(atoms.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return atoms[i] < atoms[j]; });
  DiscreteMarginal d;
  for (std::size_t idx : order) {
    if (weights[idx] == 0.0) continue;
    if (!d.atoms.empty() && d.atoms.back() == atoms[idx]) {
      d.weights.back() += weights[idx] / total;
    } else {
      d.atoms.push_back(atoms[idx]);
      d.weights.push_back(weights[idx] / total);
    }
  }
  return Marginal(std::move(d));
}

Marginal Marginal::truncated_normal(double mean, double sd, double lo, double hi) {
  if (!std::isfinite(mean) || !std::isfinite(sd) || !(sd > 0.0)) {
    throw ConfigError("truncated normal requires finite mean and sd > 0");
  }
  if (std::isnan(lo) || std::isnan(hi) || !(lo < hi) || lo == Interval::kInf ||
      hi == -Interval::kInf) {
    throw ConfigError("truncated normal requires lo < hi");
  }
  TruncatedNormalMarginal m{mean, sd, lo, hi};
  if (!(standardize(m).mass > 0.0)) {
    throw ConfigError("truncated normal has no mass between lo and hi");
  }
  return Marginal(m);
}

std::string Marginal::type_name() const {
  return std::visit(overloaded{
                        [](const UniformMarginal&) { return std::string("uniform"); },
                        [](const ExponentialMarginal&) { return std::string("exponential"); },
                        [](const DiscreteMarginal&) { return std::string("discrete"); },
                        [](const TruncatedNormalMarginal&) {
                          return std::string("truncated_normal");
                        },
                    },
                    kind_);
}

double Marginal::sample(CounterRng& rng) const { return quantile(uniform_open01(rng)); }

double Marginal::prob_at_least(double x) const {
  return std::visit(
      overloaded{
          [x](const UniformMarginal& u) { return clamp01((u.b - x) / (u.b - u.a)); },
          [x](const ExponentialMarginal& e) { return x <= 0.0 ? 1.0 : std::exp(-e.rate * x); },
          [x](const DiscreteMarginal& d) {
            double p = 0.0;
            for (std::size_t i = 0; i < d.atoms.size(); ++i) {
              if (d.atoms[i] >= x) p += d.weights[i];
            }
            return clamp01(p);
          },
          [x](const TruncatedNormalMarginal& t) { return tn_prob_at_least(t, x); },
      },
      kind_);
}

double Marginal::prob_below(double x) const {
  if (const auto* d = std::get_if<DiscreteMarginal>(&kind_)) {
    double p = 0.0;
    for (std::size_t i = 0; i < d->atoms.size(); ++i) {
      if (d->atoms[i] < x) p += d->weights[i];
    }
    return clamp01(p);
  }
  return clamp01(1.0 - prob_at_least(x));
}

double Marginal::prob_at_most(double x) const {
  if (const auto* d = std::get_if<DiscreteMarginal>(&kind_)) {
    double p = 0.0;
    for (std::size_t i = 0; i < d->atoms.size(); ++i) {
      if (d->atoms[i] <= x) p += d->weights[i];
    }
    return clamp01(p);
  }
  // Continuous marginals: no atoms, so P(V <= x) = P(V < x).
  if (const auto* e = std::get_if<ExponentialMarginal>(&kind_)) {
    return x <= 0.0 ? 0.0 : clamp01(-std::expm1(-e->rate * x));
  }
  return prob_below(x);
}

double Marginal::prob_above(double x) const {
  if (std::holds_alternative<DiscreteMarginal>(kind_)) return clamp01(1.0 - prob_at_most(x));
  return prob_at_least(x);
}

double Marginal::mean() const {
  return std::visit(overloaded{
                        [](const UniformMarginal& u) { return 0.5 * (u.a + u.b); },
                        [](const ExponentialMarginal& e) { return 1.0 / e.rate; },
                        [](const DiscreteMarginal& d) {
                          double m = 0.0;
                          for (std::size_t i = 0; i < d.atoms.size(); ++i) {
                            m += d.atoms[i] * d.weights[i];
                          }
                          return m;
                        },
                        [](const TruncatedNormalMarginal& t) {
                          const auto s = standardize(t);
                          return t.mean + t.sd * (density(s.lo) - density(s.hi)) / s.mass;
                        },
                    },
                    kind_);
}

double Marginal::quantile(double p) const {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("quantile level must lie in (0, 1)");
  return std::visit(
      overloaded{
          [p](const UniformMarginal& u) { return std::min(u.a + p * (u.b - u.a), u.b); },
          [p](const ExponentialMarginal& e) { return -std::log1p(-p) / e.rate; },
          [p](const DiscreteMarginal& d) {
            double cum = 0.0;
            for (std::size_t i = 0; i < d.atoms.size(); ++i) {
              cum += d.weights[i];
              if (cum >= p) return d.atoms[i];
            }
            return d.atoms.back();
          },
          [p](const TruncatedNormalMarginal& t) {
            const auto s = standardize(t);
            double z;
            if (s.lo >= 0.0) {
              const double q = phi_upper(s.lo) - p * s.mass;
              z = boost::math::quantile(boost::math::complement(kStdNormal, q));
            } else {
              z = boost::math::quantile(kStdNormal, phi_lower(s.lo) + p * s.mass);
            }
            return std::clamp(t.mean + t.sd * z, t.lo, t.hi);
          },
      },
      kind_);
}

double Marginal::support_lower() const {
  return std::visit(overloaded{
                        [](const UniformMarginal& u) { return u.a; },
                        [](const ExponentialMarginal&) { return 0.0; },
                        [](const DiscreteMarginal& d) { return d.atoms.front(); },
                        [](const TruncatedNormalMarginal& t) { return t.lo; },
                    },
                    kind_);
}

double Marginal::support_upper() const {
  return std::visit(overloaded{
                        [](const UniformMarginal& u) { return u.b; },
                        [](const ExponentialMarginal&) { return Interval::kInf; },
                        [](const DiscreteMarginal& d) { return d.atoms.back(); },
                        [](const TruncatedNormalMarginal& t) { return t.hi; },
                    },
                    kind_);
}

ShockDistribution::ShockDistribution(std::vector<Marginal> marginals)
    : marginals_(std::move(marginals)) {
  if (marginals_.empty()) throw ConfigError("shock distribution needs at least one marginal");
}

ShockVector ShockDistribution::sample(CounterRng& rng) const {
  std::vector<double> v(marginals_.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = marginals_[i].sample(rng);
  return ShockVector(std::move(v));
}

ShockVector ShockDistribution::quantile(double p) const {
  std::vector<double> v(marginals_.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = marginals_[i].quantile(p);
  return ShockVector(std::move(v));
}

std::vector<double> ShockDistribution::mean() const {
  std::vector<double> m(marginals_.size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = marginals_[i].mean();
  return m;
}

namespace {

template <class Fn>
double product_mass(const ShockDistribution& dist, const ShockVector& v, Fn&& marginal_mass) {
  detail::require_same_size(dist.dimension(), v.size());
  double p = 1.0;
  for (std::size_t i = 0; i < v.size(); ++i) p *= marginal_mass(dist.marginal(i), v[i]);
  return p;
}

}  // namespace

double tail_mass_above(const ShockDistribution& dist, const ShockVector& v) {
  return product_mass(dist, v, [](const Marginal& m, double x) { return m.prob_at_least(x); });
}

double tail_mass_below(const ShockDistribution& dist, const ShockVector& v) {
  return product_mass(dist, v, [](const Marginal& m, double x) { return m.prob_at_most(x); });
}

double tail_mass_strictly_below(const ShockDistribution& dist, const ShockVector& v) {
  return product_mass(dist, v, [](const Marginal& m, double x) { return m.prob_below(x); });
}

double tail_mass_strictly_above(const ShockDistribution& dist, const ShockVector& v) {
  return product_mass(dist, v, [](const Marginal& m, double x) { return m.prob_above(x); });
}

}  // namespace monostab
