#include "monostab/model.hpp"

#include <cmath>

namespace monostab {

TransitionModel::TransitionModel(ModelSpec spec) : spec_(std::move(spec)) {
  if (!spec_.transition) throw ConfigError("transition model needs a transition map");
  if (spec_.shocks.dimension() != spec_.shock_space.dimension()) {
    throw ConfigError("shocks: expected " + std::to_string(spec_.shock_space.dimension()) +
                      " marginals, got " + std::to_string(spec_.shocks.dimension()));
  }
  if (spec_.default_pair) {
    detail::require_same_size(spec_.default_pair->v_hi.size(), shock_dim());
    detail::require_same_size(spec_.default_pair->v_lo.size(), shock_dim());
  }
  for (const auto& p : spec_.default_test_points) {
    if (!spec_.state_space.contains(p)) {
      throw ConfigError("default test point " + to_string(p) + " lies outside the state space");
    }
  }
}

StateVector TransitionModel::apply(const StateVector& x, const ShockVector& v) const {
  if (!spec_.state_space.contains(x)) {
    throw DomainError("state " + to_string(x) + " lies outside " + spec_.state_space.describe());
  }
  if (!spec_.shock_space.contains(v)) {
    throw DomainError("shock " + to_string(v) + " lies outside " + spec_.shock_space.describe());
  }
  std::vector<double> out(state_dim());
  spec_.transition(x.coords(), v.coords(), out);
  for (double c : out) {
    if (!std::isfinite(c)) {
      throw DomainError("transition produced a non-finite state from x = " + to_string(x) +
                        ", v = " + to_string(v));
    }
  }
  if (!spec_.state_space.contains(std::span<const double>(out))) {
    throw DomainError("transition left the state space: w(" + to_string(x) + ", " +
                      to_string(v) + ") = " + to_string(out));
  }
  return StateVector(std::move(out));
}

std::optional<double> TransitionModel::lipschitz_bound(const ShockVector& v) const {
  if (!spec_.lipschitz_bound) return std::nullopt;
  return spec_.lipschitz_bound(v);
}

OrderInterval sampling_box(const StateSpace& space, double radius) {
  if (!(radius > 0.0)) throw DomainError("sampling radius must be positive");
  std::vector<double> lo(space.dimension());
  std::vector<double> hi(space.dimension());
  for (std::size_t i = 0; i < space.dimension(); ++i) {
    const Interval& d = space[i];
    double a = d.lower_closed() ? d.lower() : std::nextafter(d.lower(), Interval::kInf);
    double b = d.upper_closed() ? d.upper() : std::nextafter(d.upper(), -Interval::kInf);
    double l = std::max(a, -radius);
    double h = std::min(b, radius);
    if (!(l < h)) {
      if (a > -radius) {
        l = a;
        h = std::min(b, a + radius);
      } else {
        h = b;
        l = std::max(a, b - radius);
      }
    }
    lo[i] = l;
    hi[i] = h;
  }
  return OrderInterval(StateVector(std::move(lo)), StateVector(std::move(hi)));
}

StateVector sample_uniform(const OrderInterval& box, CounterRng& rng) {
  std::vector<double> x(box.dimension());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = uniform_between(rng, box.low()[i], box.high()[i]);
  return StateVector(std::move(x));
}

}  // namespace monostab
