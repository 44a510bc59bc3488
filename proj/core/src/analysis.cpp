#include "monostab/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace monostab {

std::string to_string(Direction d) {
  switch (d) {
    case Direction::kIncreasingFromBelow: return "increasing-from-below";
    case Direction::kDecreasingFromAbove: return "decreasing-from-above";
    case Direction::kNonMonotone: return "non-monotone";
  }
  return "unknown";
}

std::string to_string(UniquenessVerdict v) {
  switch (v) {
    case UniquenessVerdict::kSupported: return "supported";
    case UniquenessVerdict::kRefuted: return "refuted";
    case UniquenessVerdict::kInconclusive: return "inconclusive";
  }
  return "unknown";
}

std::string to_string(ConcavityKind k) {
  switch (k) {
    case ConcavityKind::kStrictlyConcaveEvidence: return "strictly-concave-evidence";
    case ConcavityKind::kConcaveNotStrict: return "concave-not-strict";
    case ConcavityKind::kViolated: return "violated";
  }
  return "unknown";
}

FixedPointResult iterate_map(const TransitionModel& model, const ShockVector& v,
                             const StateVector& x0, const IterationOptions& options) {
  if (!(options.tol > 0.0)) throw DomainError("iteration tolerance must be positive");
  StateVector x = x0;
  StateVector fx = model.apply(x, v);
  double residual = max_norm_distance(fx, x);

  Direction dir = Direction::kNonMonotone;
  if (leq(x0, fx)) {
    dir = Direction::kIncreasingFromBelow;
  } else if (leq(fx, x0)) {
    dir = Direction::kDecreasingFromAbove;
  }

  FixedPointResult result{.point = x0, .direction = dir};
  if (options.keep_trace) result.trace.push_back(x0);

  std::size_t steps = 0;
  while (residual > options.tol) {
    if (steps == options.max_iter) {
      throw IterationLimitExceeded("fixed-point iteration from " + to_string(x0) +
                                   " did not reach tolerance in " +
                                   std::to_string(options.max_iter) + " steps (residual " +
                                   std::to_string(residual) + ")");
    }
    StateVector prev = std::move(x);
    x = std::move(fx);
    ++steps;
    if (dir == Direction::kIncreasingFromBelow && !leq(prev, x)) {
      throw MonotonicityViolation("iterates from below stopped increasing at step " +
                                  std::to_string(steps) + ": " + to_string(prev) + " -> " +
                                  to_string(x));
    }
    if (dir == Direction::kDecreasingFromAbove && !leq(x, prev)) {
      throw MonotonicityViolation("iterates from above stopped decreasing at step " +
                                  std::to_string(steps) + ": " + to_string(prev) + " -> " +
                                  to_string(x));
    }
    if (options.keep_trace) result.trace.push_back(x);
    fx = model.apply(x, v);
    residual = max_norm_distance(fx, x);
  }

  // A monotone chain keeps moving toward its limit after the residual test
  // passes; follow it until it stalls so the limit is accurate to rounding.
  if (options.polish && dir != Direction::kNonMonotone) {
    while (steps < options.max_iter && !(fx == x)) {
      const bool forward = dir == Direction::kIncreasingFromBelow ? leq(x, fx) : leq(fx, x);
      if (!forward) break;
      StateVector next = model.apply(fx, v);
      const double r = max_norm_distance(next, fx);
      if (r > options.tol) break;
      x = std::move(fx);
      fx = std::move(next);
      residual = r;
      ++steps;
      if (options.keep_trace) result.trace.push_back(x);
    }
  }

  result.point = std::move(x);
  result.iterations = steps;
  result.residual = residual;
  return result;
}

UniquenessProbe probe_unique_fixed_point(const TransitionModel& model, const ShockVector& v,
                                         const std::vector<StateVector>& starts, double tol,
                                         std::size_t max_iter) {
  UniquenessProbe probe;
  probe.starts = starts;
  IterationOptions opts{.tol = tol, .max_iter = max_iter};
  for (const auto& s : starts) {
    try {
      probe.limits.emplace_back(iterate_map(model, v, s, opts).point);
    } catch (const Error& e) {
      probe.limits.emplace_back(std::nullopt);
      probe.failures.push_back(to_string(s) + ": " + e.what());
    }
  }

  for (std::size_t i = 0; i < probe.limits.size(); ++i) {
    for (std::size_t j = i + 1; j < probe.limits.size(); ++j) {
      if (!probe.limits[i] || !probe.limits[j]) continue;
      const double d = max_norm_distance(*probe.limits[i], *probe.limits[j]);
      if (d > probe.spread) {
        probe.spread = d;
        probe.witnesses.emplace(*probe.limits[i], *probe.limits[j]);
      }
    }
  }

  if (probe.spread > 10.0 * tol) {
    probe.verdict = UniquenessVerdict::kRefuted;
  } else {
    probe.witnesses.reset();
    probe.verdict = probe.failures.empty() && starts.size() >= 2 ? UniquenessVerdict::kSupported
                                                                 : UniquenessVerdict::kInconclusive;
  }
  return probe;
}

namespace {

/// Dyadic spacing a few dozen bits below the side length.
double grid_step(double width) { return std::ldexp(1.0, std::ilogb(width) - 30); }

StateVector snap(const StateVector& x, const OrderInterval& region, std::span<const double> step) {
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    out[i] = std::clamp(std::round(x[i] / step[i]) * step[i], region.low()[i], region.high()[i]);
  }
  return StateVector(std::move(out));
}

}  // namespace

ContractionEstimate estimate_contraction(const TransitionModel& model, const ShockVector& v,
                                         const OrderInterval& region, std::size_t n_pairs,
                                         CounterRng& rng) {
  if (!region.is_nondegenerate()) throw DomainError("contraction region must be nondegenerate");
  const std::size_t n = region.dimension();
  std::vector<double> step(n);
  for (std::size_t i = 0; i < n; ++i) step[i] = grid_step(region.high()[i] - region.low()[i]);

  ContractionEstimate est;
  auto consider = [&](const StateVector& x, const StateVector& y) {
    const double dx = max_norm_distance(x, y);
    if (dx == 0.0) return;
    const double ratio = max_norm_distance(model.apply(x, v), model.apply(y, v)) / dx;
    ++est.sample_count;
    if (ratio > est.constant_lower_bound || !est.worst_pair) {
      est.constant_lower_bound = std::max(est.constant_lower_bound, ratio);
      est.worst_pair.emplace(x, y);
    }
  };

  for (std::size_t k = 0; k < n_pairs; ++k) {
    StateVector x = snap(sample_uniform(region, rng), region, step);
    StateVector y = snap(sample_uniform(region, rng), region, step);
    consider(x, y);
  }

  consider(region.low(), region.high());

  // Every corner when there are few, otherwise just low and high.
  const std::size_t corner_count = n <= 10 ? (std::size_t{1} << n) : 2;
  for (std::size_t mask = 0; mask < corner_count; ++mask) {
    std::vector<double> corner(n);
    std::vector<bool> at_high(n);
    for (std::size_t i = 0; i < n; ++i) {
      at_high[i] = n <= 10 ? ((mask >> i) & 1U) != 0 : mask == 1;
      corner[i] = at_high[i] ? region.high()[i] : region.low()[i];
    }
    const StateVector c(corner);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<double> moved = corner;
      const double h = std::min(std::ldexp(step[i], 8), 0.5 * (region.high()[i] - region.low()[i]));
      moved[i] += at_high[i] ? -h : h;
      consider(c, StateVector(std::move(moved)));
    }
  }

  est.is_contraction_evidence = est.constant_lower_bound < 1.0;
  return est;
}

bool ConcavityVerdict::all_strict() const {
  for (const auto& c : coords) {
    if (c.verdict != ConcavityKind::kStrictlyConcaveEvidence) return false;
  }
  return !coords.empty();
}

bool ConcavityVerdict::any_violated() const {
  for (const auto& c : coords) {
    if (c.verdict == ConcavityKind::kViolated) return true;
  }
  return false;
}

ConcavityVerdict check_concavity(const TransitionModel& model, const ShockVector& v,
                                 const OrderInterval& region, std::size_t n_triples, double tol,
                                 CounterRng& rng) {
  if (!region.is_nondegenerate()) throw DomainError("concavity region must be nondegenerate");
  if (!(tol > 0.0)) throw DomainError("concavity tolerance must be positive");
  const std::size_t n = region.dimension();
  double widest = 0.0;
  for (std::size_t i = 0; i < n; ++i) widest = std::max(widest, region.high()[i] - region.low()[i]);
  const double strict_distance = std::max(1e-3, 0.01 * widest);

  ConcavityVerdict verdict;
  verdict.coords.resize(model.state_dim());
  std::vector<bool> strict_ok(model.state_dim(), true);
  for (auto& c : verdict.coords) c.min_strict_gap = std::numeric_limits<double>::infinity();

  auto test = [&](const StateVector& x, const StateVector& y, double lambda, bool strict_pair) {
    std::vector<double> mix(n);
    for (std::size_t i = 0; i < n; ++i) {
      mix[i] = std::clamp(lambda * x[i] + (1.0 - lambda) * y[i], std::min(x[i], y[i]),
                          std::max(x[i], y[i]));
    }
    const StateVector m(std::move(mix));
    const StateVector wx = model.apply(x, v);
    const StateVector wy = model.apply(y, v);
    const StateVector wm = model.apply(m, v);
    for (std::size_t i = 0; i < verdict.coords.size(); ++i) {
      auto& c = verdict.coords[i];
      const double gap = wm[i] - (lambda * wx[i] + (1.0 - lambda) * wy[i]);
      if (gap < c.worst_violation) {
        c.worst_violation = gap;
        if (gap < -tol) c.witness = ConcavityWitness{x, y, lambda, gap};
      }
      if (strict_pair) {
        ++c.strict_pairs;
        c.min_strict_gap = std::min(c.min_strict_gap, gap);
        if (!(gap > tol)) strict_ok[i] = false;
      }
    }
  };

  for (std::size_t t = 0; t < n_triples; ++t) {
    const StateVector x = sample_uniform(region, rng);
    const StateVector y = sample_uniform(region, rng);
    const double lambda = uniform_open01(rng);
    test(x, y, lambda, false);
    test(x, y, 0.5, false);
    const StateVector lo = pointwise_min(x, y);
    const StateVector hi = pointwise_max(x, y);
    test(lo, hi, 0.5, max_norm_distance(lo, hi) >= strict_distance);
  }

  for (std::size_t i = 0; i < verdict.coords.size(); ++i) {
    auto& c = verdict.coords[i];
    if (c.worst_violation < -tol) {
      c.verdict = ConcavityKind::kViolated;
    } else if (c.strict_pairs > 0 && strict_ok[i]) {
      c.verdict = ConcavityKind::kStrictlyConcaveEvidence;
    } else {
      c.verdict = ConcavityKind::kConcaveNotStrict;
    }
    if (c.strict_pairs == 0) c.min_strict_gap = 0.0;
  }
  return verdict;
}

}  // namespace monostab
