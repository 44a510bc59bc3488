#include "monostab/certificate.hpp"

#include <algorithm>
#include <cmath>

namespace monostab {

namespace {

void require_dim(std::size_t got, std::size_t want, const char* what) {
  if (got != want) {
    throw DimensionMismatch(std::string(what) + " has dimension " + std::to_string(got) +
                            ", expected " + std::to_string(want));
  }
}

void require_shock_pair(const TransitionModel& model, const ShockVector& v_hi,
                        const ShockVector& v_lo) {
  require_dim(v_hi.size(), model.shock_dim(), "v_hi");
  require_dim(v_lo.size(), model.shock_dim(), "v_lo");
}

std::vector<StateVector> box_corners(const OrderInterval& box) {
  const std::size_t n = box.dimension();
  std::vector<StateVector> out;
  if (n > 10) {
    out.push_back(box.low());
    out.push_back(box.high());
    return out;
  }
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::vector<double> c(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = ((mask >> i) & 1U) ? box.high()[i] : box.low()[i];
    out.emplace_back(std::move(c));
  }
  return out;
}

/// Largest value of coordinate i inside S (or its lower counterpart).
double top_of(const Interval& d) {
  return d.upper_closed() ? d.upper() : std::nextafter(d.upper(), -Interval::kInf);
}
double bottom_of(const Interval& d) {
  return d.lower_closed() ? d.lower() : std::nextafter(d.lower(), Interval::kInf);
}

/// max_i (a - b)_i
double max_excess(const StateVector& a, const StateVector& b) {
  double worst = -Interval::kInf;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, a[i] - b[i]);
  return worst;
}

struct SideResult {
  StateVector y;
  BoundSource source;
  std::size_t steps;
};

/// upper = true: y >= x and w(y, v) <= y. upper = false: y <= x and y <= w(y, v).
SideResult search_side(const TransitionModel& model, const ShockVector& v, const StateVector& x,
                       double search_cap, bool upper) {
  const StateSpace& S = model.state_space();
  const auto extreme = upper ? S.greatest_element() : S.least_element();
  if (extreme) return {*extreme, BoundSource::kExtremeElement, 0};

  const std::size_t n = x.size();
  double anchor = x[0];
  for (std::size_t i = 1; i < n; ++i) anchor = upper ? std::max(anchor, x[i]) : std::min(anchor, x[i]);
  const double scale = std::max(1.0, std::abs(anchor));

  std::size_t steps = 0;
  std::optional<StateVector> previous;
  for (double t = 0.0;; t = t == 0.0 ? 1.0 : 2.0 * t) {
    const double offset = t * scale;
    if (offset > search_cap) break;
    std::vector<double> c(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double raw = upper ? anchor + offset : anchor - offset;
      c[i] = upper ? std::min(raw, top_of(S[i])) : std::max(raw, bottom_of(S[i]));
    }
    StateVector y(std::move(c));
    if (previous && y == *previous) break;  // clamped at the edge of S
    ++steps;
    const StateVector wy = model.apply(y, v);
    const bool ok = upper ? (leq(wy, y) && leq(x, y)) : (leq(y, wy) && leq(y, x));
    if (ok) return {std::move(y), BoundSource::kSearch, steps};
    previous = std::move(y);
  }
  throw SearchCapExceeded(std::string("no ") + (upper ? "upper" : "lower") +
                          " bounding point for x = " + to_string(x) + " within offset " +
                          std::to_string(search_cap));
}

}  // namespace

OrderedNormalPair verify_normal_pair(const TransitionModel& model, const ShockVector& v_hi,
                                     const ShockVector& v_lo, std::size_t n_x_samples,
                                     CounterRng& rng) {
  require_shock_pair(model, v_hi, v_lo);
  for (const auto* v : {&v_hi, &v_lo}) {
    if (!model.shock_space().contains(*v)) {
      throw DomainError("shock " + to_string(*v) + " is outside " + model.shock_space().describe());
    }
  }
  if (!lt_strict(v_lo, v_hi)) {
    throw NotOrdered("v_lo = " + to_string(v_lo) + " is not strictly below v_hi = " +
                     to_string(v_hi));
  }
  OrderedNormalPair pair{.shocks = {v_hi, v_lo}};
  pair.p_up = tail_mass_above(model.shocks(), v_hi);
  pair.p_down = tail_mass_below(model.shocks(), v_lo);
  if (!(pair.p_up > 0.0)) throw ZeroTailMass("P(V >= v_hi) = 0 for v_hi = " + to_string(v_hi));
  if (!(pair.p_down > 0.0)) throw ZeroTailMass("P(V <= v_lo) = 0 for v_lo = " + to_string(v_lo));

  const OrderInterval box = sampling_box(model.state_space(), 100.0);
  std::vector<StateVector> points = box_corners(box);
  if (auto least = model.state_space().least_element()) points.push_back(*least);
  if (auto greatest = model.state_space().greatest_element()) points.push_back(*greatest);
  for (std::size_t k = 0; k < n_x_samples; ++k) points.push_back(sample_uniform(box, rng));

  for (const auto& x : points) {
    const StateVector hi = model.apply(x, v_hi);
    const StateVector lo = model.apply(x, v_lo);
    if (!lt_strict(lo, hi)) {
      throw DominanceViolation("w(x, v_hi) > w(x, v_lo) fails at x = " + to_string(x) +
                               ": w(x, v_hi) = " + to_string(hi) + ", w(x, v_lo) = " +
                               to_string(lo));
    }
    ++pair.dominance_samples;
  }
  return pair;
}

std::string to_string(BoundSource s) {
  return s == BoundSource::kExtremeElement ? "extreme-element" : "search";
}

BoundingPair find_bounding_pair(const TransitionModel& model, const ShockPair& pair,
                                const StateVector& x, double search_cap) {
  require_shock_pair(model, pair.v_hi, pair.v_lo);
  require_dim(x.size(), model.state_dim(), "x");
  if (!model.state_space().contains(x)) {
    throw DomainError("x = " + to_string(x) + " is outside " + model.state_space().describe());
  }
  if (!(search_cap >= 0.0)) throw DomainError("search cap must be nonnegative");

  SideResult lo = search_side(model, pair.v_lo, x, search_cap, false);
  SideResult hi = search_side(model, pair.v_hi, x, search_cap, true);

  BoundingPair out{.x = x, .y_lo = std::move(lo.y), .y_hi = std::move(hi.y),
                   .lo_source = lo.source, .hi_source = hi.source,
                   .search_steps = lo.steps + hi.steps};
  const StateVector w_lo = model.apply(out.y_lo, pair.v_lo);
  const StateVector w_hi = model.apply(out.y_hi, pair.v_hi);
  if (!leq(out.y_lo, x) || !leq(out.y_lo, w_lo) || !leq(x, out.y_hi) || !leq(w_hi, out.y_hi)) {
    throw SearchCapExceeded("bounding pair for x = " + to_string(x) + " fails re-verification");
  }
  out.lo_residual = max_excess(out.y_lo, w_lo);
  out.hi_residual = max_excess(w_hi, out.y_hi);
  return out;
}

SplittingCertificate build_splitting_certificate(const TransitionModel& model,
                                                 const OrderedNormalPair& pair,
                                                 const StateVector& x_low,
                                                 const StateVector& x_high,
                                                 const SplittingOptions& options) {
  const ShockVector& v_hi = pair.shocks.v_hi;
  const ShockVector& v_lo = pair.shocks.v_lo;
  require_shock_pair(model, v_hi, v_lo);
  require_dim(x_low.size(), model.state_dim(), "x_low");
  require_dim(x_high.size(), model.state_dim(), "x_high");
  if (!leq(x_low, x_high)) {
    throw NotOrdered("x_low = " + to_string(x_low) + " is not below x_high = " + to_string(x_high));
  }

  StateVector z_start = x_low;
  StateVector y_start = x_high;
  const bool z_sub = !leq(x_low, model.apply(x_low, v_hi));
  const bool y_sub = !leq(model.apply(x_high, v_lo), x_high);
  if (z_sub) z_start = find_bounding_pair(model, pair.shocks, x_low, options.search_cap).y_lo;
  if (y_sub) y_start = find_bounding_pair(model, pair.shocks, x_high, options.search_cap).y_hi;

  const IterationOptions iter{.tol = options.tol, .max_iter = options.max_iter, .keep_trace = true};
  FixedPointResult z = iterate_map(model, v_hi, z_start, iter);
  FixedPointResult y = iterate_map(model, v_lo, y_start, iter);

  SplittingCertificate cert{.pair = pair, .x_low = x_low, .x_high = x_high,
                            .z_start = std::move(z_start), .y_start = std::move(y_start),
                            .z_substituted = z_sub, .y_substituted = y_sub,
                            .C = z.point, .C_star = y.point, .x_split = z.point,
                            .m = 0, .prob_bound = 0.0,
                            .trace_z = std::move(z.trace), .trace_y = std::move(y.trace),
                            .residual_z = z.residual, .residual_y = y.residual};

  const std::size_t n = model.state_dim();
  const double margin = 100.0 * options.tol;
  std::vector<double> mid(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(cert.C[i] - cert.C_star[i] > margin)) {
      throw FixedPointsNotSeparated("C = " + to_string(cert.C) + " and C* = " +
                                    to_string(cert.C_star) + " are not separated by more than " +
                                    std::to_string(margin) + " in coordinate " + std::to_string(i));
    }
    mid[i] = 0.5 * (cert.C[i] + cert.C_star[i]);
  }
  cert.x_split = StateVector(std::move(mid));

  auto first_crossing = [&](std::vector<StateVector>& trace, const ShockVector& v, bool above) {
    for (std::size_t t = 1;; ++t) {
      if (t == trace.size()) {
        if (t > options.max_iter) {
          throw IterationLimitExceeded("chain did not cross x_split within max_iter steps");
        }
        trace.push_back(model.apply(trace.back(), v));
      }
      if (above ? lt_all(cert.x_split, trace[t]) : lt_all(trace[t], cert.x_split)) return t;
    }
  };
  const std::size_t m_z = first_crossing(cert.trace_z, v_hi, true);
  const std::size_t m_y = first_crossing(cert.trace_y, v_lo, false);
  cert.m = std::max(m_z, m_y);
  while (cert.trace_z.size() <= cert.m) cert.trace_z.push_back(model.apply(cert.trace_z.back(), v_hi));
  while (cert.trace_y.size() <= cert.m) cert.trace_y.push_back(model.apply(cert.trace_y.back(), v_lo));

  cert.prob_bound = std::pow(pair.p_up * pair.p_down, static_cast<double>(cert.m));
  return cert;
}

std::vector<std::string> audit_certificate(const TransitionModel& model,
                                           const SplittingCertificate& cert, double tol) {
  std::vector<std::string> failures;
  auto check = [&](bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  };
  const ShockVector& v_hi = cert.pair.shocks.v_hi;
  const ShockVector& v_lo = cert.pair.shocks.v_lo;

  auto replay = [&](const std::vector<StateVector>& trace, const StateVector& start,
                    const ShockVector& v, bool increasing, const std::string& name) {
    if (trace.empty() || !(trace.front() == start)) {
      failures.push_back(name + " does not start at its recorded start");
      return;
    }
    for (std::size_t k = 0; k + 1 < trace.size(); ++k) {
      if (!(model.apply(trace[k], v) == trace[k + 1])) {
        failures.push_back(name + " does not replay at step " + std::to_string(k + 1));
        return;
      }
      const bool ordered = increasing ? leq(trace[k], trace[k + 1]) : leq(trace[k + 1], trace[k]);
      if (!ordered) {
        failures.push_back(name + " is not monotone at step " + std::to_string(k + 1));
        return;
      }
    }
  };
  replay(cert.trace_z, cert.z_start, v_hi, true, "trace_z");
  replay(cert.trace_y, cert.y_start, v_lo, false, "trace_y");

  check(max_norm_distance(model.apply(cert.C, v_hi), cert.C) <= tol, "residual at C exceeds tol");
  check(max_norm_distance(model.apply(cert.C_star, v_lo), cert.C_star) <= tol,
        "residual at C* exceeds tol");
  check(lt_all(cert.C_star, cert.C), "C* < C fails");
  check(lt_all(cert.C_star, cert.x_split) && lt_all(cert.x_split, cert.C),
        "x_split is not strictly between C* and C");
  check(cert.m >= 1, "m < 1");
  if (cert.m < cert.trace_z.size() && cert.m < cert.trace_y.size()) {
    check(lt_all(cert.x_split, cert.trace_z[cert.m]), "z_m does not exceed x_split");
    check(lt_all(cert.trace_y[cert.m], cert.x_split), "y_m is not below x_split");
    if (cert.m > 1) {
      const bool earlier = lt_all(cert.x_split, cert.trace_z[cert.m - 1]) &&
                           lt_all(cert.trace_y[cert.m - 1], cert.x_split);
      check(!earlier, "m is not the first crossing");
    }
  } else {
    failures.push_back("traces are shorter than m");
  }
  const double expected = std::pow(cert.pair.p_up * cert.pair.p_down, static_cast<double>(cert.m));
  const double ulp = std::nextafter(expected, Interval::kInf) - expected;
  check(std::abs(cert.prob_bound - expected) <= ulp, "prob_bound differs from (p_up p_down)^m");
  check(cert.prob_bound > 0.0 && cert.prob_bound <= 1.0, "prob_bound outside (0, 1]");
  return failures;
}

std::string to_string(Route r) {
  switch (r) {
    case Route::kDirect: return "direct";
    case Route::kContraction: return "contraction";
    case Route::kConcave: return "concave";
    case Route::kCompact: return "compact";
  }
  return "unknown";
}

Route route_from_string(const std::string& name) {
  if (name == "direct") return Route::kDirect;
  if (name == "contraction") return Route::kContraction;
  if (name == "concave") return Route::kConcave;
  if (name == "compact") return Route::kCompact;
  throw ConfigError("unknown route '" + name + "' (expected direct, contraction, concave or compact)");
}

std::string evidence_name(Route r) {
  switch (r) {
    case Route::kDirect: return "direct-unique-fp";
    case Route::kContraction: return "contraction";
    case Route::kConcave: return "concave-bracket";
    case Route::kCompact: return "compact-space";
  }
  return "unknown";
}

std::string StabilityReport::overall() const {
  return certified ? kCertified : "failed(" + failure_reason + ")";
}

namespace {

void run_direct(const TransitionModel& model, const ShockPair& pair,
                const std::vector<StateVector>& starts, const CertifyOptions& opt, ConditionI& ci) {
  ci.probe_lo = probe_unique_fixed_point(model, pair.v_lo, starts, opt.tol, opt.max_iter);
  if (ci.probe_lo->verdict == UniquenessVerdict::kSupported) {
    ci.established = true;
    ci.supported_by = "v_lo";
    return;
  }
  ci.probe_hi = probe_unique_fixed_point(model, pair.v_hi, starts, opt.tol, opt.max_iter);
  if (ci.probe_hi->verdict == UniquenessVerdict::kSupported) {
    ci.established = true;
    ci.supported_by = "v_hi";
    return;
  }
  ci.notes.push_back("uniqueness probe is " + to_string(ci.probe_lo->verdict) + " for v_lo and " +
                     to_string(ci.probe_hi->verdict) + " for v_hi");
}

void run_compact(const TransitionModel& model, const ShockPair& pair,
                 std::vector<StateVector> starts, const CertifyOptions& opt, ConditionI& ci) {
  const auto least = model.state_space().least_element();
  const auto greatest = model.state_space().greatest_element();
  ci.space_bounded = least && greatest;
  if (!*ci.space_bounded) {
    ci.notes.push_back("state space " + model.state_space().describe() +
                       " has no least or no greatest element");
    return;
  }
  starts.push_back(*least);
  starts.push_back(*greatest);
  ci.probe_lo = probe_unique_fixed_point(model, pair.v_lo, starts, opt.tol, opt.max_iter);
  ci.established = ci.probe_lo->verdict == UniquenessVerdict::kSupported;
  if (ci.established) {
    ci.supported_by = "v_lo";
  } else {
    ci.notes.push_back("uniqueness probe for v_lo is " + to_string(ci.probe_lo->verdict));
  }
}

void run_contraction(const TransitionModel& model, const ShockPair& pair, const CertifyOptions& opt,
                     ConditionI& ci) {
  bool real_space = true;
  for (const auto& d : model.state_space().dims()) real_space = real_space && d == Interval::real_line();
  if (!real_space) ci.notes.push_back("state space is not R^n; Banach argument applied on S");

  ci.analytic_bound_hi = model.lipschitz_bound(pair.v_hi);
  ci.analytic_bound_lo = model.lipschitz_bound(pair.v_lo);
  ci.sampled_region = sampling_box(model.state_space(), opt.sampling_radius);
  CounterRng rng_hi(opt.seed, "contraction/v_hi", 0);
  CounterRng rng_lo(opt.seed, "contraction/v_lo", 0);
  ci.sampled_hi = estimate_contraction(model, pair.v_hi, *ci.sampled_region, opt.contraction_pairs, rng_hi);
  ci.sampled_lo = estimate_contraction(model, pair.v_lo, *ci.sampled_region, opt.contraction_pairs, rng_lo);

  bool ok = true;
  auto judge = [&](const std::optional<double>& analytic, const ContractionEstimate& sampled,
                   const std::string& name) {
    if (analytic) {
      if (!(*analytic < 1.0)) {
        ok = false;
        ci.notes.push_back("analytic Lipschitz bound for " + name + " is " +
                           std::to_string(*analytic) + " >= 1");
      }
      return;
    }
    ci.notes.push_back("no analytic Lipschitz bound for " + name +
                       "; relying on a sampled lower bound");
    if (!sampled.is_contraction_evidence) {
      ok = false;
      ci.notes.push_back("sampled Lipschitz ratio for " + name + " reaches " +
                         std::to_string(sampled.constant_lower_bound));
    }
  };
  judge(ci.analytic_bound_hi, *ci.sampled_hi, "v_hi");
  judge(ci.analytic_bound_lo, *ci.sampled_lo, "v_lo");
  ci.established = ok;
}

void run_concave(const TransitionModel& model, const ShockPair& pair, const RouteSpec& route,
                 const CertifyOptions& opt, ConditionI& ci) {
  const std::size_t n = model.state_dim();
  const auto least = model.state_space().least_element();
  if (!least || !(*least == StateVector::constant(n, 0.0))) {
    ci.notes.push_back("concave route needs S = R^n_+ (least element 0)");
    return;
  }
  if (!route.a || !route.b) {
    ci.notes.push_back("concave route needs bracket points a and b");
    return;
  }
  const StateVector& a = *route.a;
  const StateVector& b = *route.b;
  require_dim(a.size(), n, "a");
  require_dim(b.size(), n, "b");
  if (!lt_all(*least, a) || !lt_all(a, b) || !model.state_space().contains(b)) {
    ci.notes.push_back("bracket needs 0 < a < b inside S");
    return;
  }

  const OrderInterval region(*least, b);
  CounterRng rng_hi(opt.seed, "concavity/v_hi", 0);
  CounterRng rng_lo(opt.seed, "concavity/v_lo", 0);
  ci.concavity_hi = check_concavity(model, pair.v_hi, region, opt.concavity_triples, opt.concavity_tol, rng_hi);
  ci.concavity_lo = check_concavity(model, pair.v_lo, region, opt.concavity_triples, opt.concavity_tol, rng_lo);

  BracketCheck br{.a = a, .b = b,
                  .w_a_hi = model.apply(a, pair.v_hi), .w_a_lo = model.apply(a, pair.v_lo),
                  .w_b_hi = model.apply(b, pair.v_hi), .w_b_lo = model.apply(b, pair.v_lo)};
  br.pass = lt_all(a, br.w_a_hi) && lt_all(a, br.w_a_lo) && lt_all(br.w_b_hi, b) &&
            lt_all(br.w_b_lo, b);
  ci.bracket = br;

  const bool strict = ci.concavity_hi->all_strict() && ci.concavity_lo->all_strict();
  if (!strict) ci.notes.push_back("strict concavity not supported for both shocks");
  if (!br.pass) ci.notes.push_back("bracket inequalities w(a) > a and w(b) < b fail");
  ci.established = strict && br.pass;
}

}  // namespace

StabilityReport certify(const TransitionModel& model, const ShockPair& pair, const RouteSpec& route,
                        std::vector<StateVector> test_points, const CertifyOptions& options) {
  require_shock_pair(model, pair.v_hi, pair.v_lo);
  if (test_points.empty()) test_points = model.default_test_points();
  if (test_points.empty()) throw DomainError("certify needs at least one test point");
  for (const auto& x : test_points) {
    require_dim(x.size(), model.state_dim(), "test point");
    if (!model.state_space().contains(x)) {
      throw DomainError("test point " + to_string(x) + " is outside " + model.state_space().describe());
    }
  }

  StabilityReport report{.pair = pair, .route = route, .test_points = test_points, .options = options};

  try {
    CounterRng rng(options.seed, "normal-pair", 0);
    report.normal_pair = verify_normal_pair(model, pair.v_hi, pair.v_lo, options.dominance_samples, rng);
  } catch (const Error& e) {
    report.normal_pair_error = e.what();
  }

  // Condition (ii) first: its bounding points also serve as probe starts.
  auto& c2 = report.condition_ii;
  c2.established = true;
  std::vector<StateVector> starts = test_points;
  for (const auto& x : test_points) {
    ConditionIIPoint pt{.x = x};
    try {
      pt.bounds = find_bounding_pair(model, pair, x, options.search_cap);
      starts.push_back(pt.bounds->y_lo);
      starts.push_back(pt.bounds->y_hi);
    } catch (const Error& e) {
      pt.error = e.what();
      c2.established = false;
    }
    c2.points.push_back(std::move(pt));
  }

  auto& c1 = report.condition_i;
  try {
    switch (route.kind) {
      case Route::kDirect: run_direct(model, pair, starts, options, c1); break;
      case Route::kCompact: run_compact(model, pair, starts, options, c1); break;
      case Route::kContraction: run_contraction(model, pair, options, c1); break;
      case Route::kConcave: run_concave(model, pair, route, options, c1); break;
    }
  } catch (const DimensionMismatch&) {
    throw;
  } catch (const Error& e) {
    c1.established = false;
    c1.notes.push_back(e.what());
  }

  if (report.normal_pair) {
    const SplittingOptions so{.tol = options.tol, .max_iter = options.max_iter,
                              .search_cap = options.search_cap};
    StateVector lo = test_points.front();
    StateVector hi = test_points.front();
    for (const auto& x : test_points) {
      lo = pointwise_min(lo, x);
      hi = pointwise_max(hi, x);
    }
    try {
      report.splitting = build_splitting_certificate(model, *report.normal_pair, lo, hi, so);
      if (test_points.size() > 2) {
        for (std::size_t i = 0; i + 1 < test_points.size(); ++i) {
          const auto& a = test_points[i];
          const auto& b = test_points[i + 1];
          report.splitting_pairs.push_back(build_splitting_certificate(
              model, *report.normal_pair, pointwise_min(a, b), pointwise_max(a, b), so));
        }
      }
    } catch (const Error& e) {
      report.splitting_error = e.what();
    }
  } else {
    report.splitting_error = "no ordered normal pair";
  }

  try {
    const auto radii =
        options.tightness_radii.empty() ? default_radii(test_points) : options.tightness_radii;
    report.tightness = tightness_diagnostic(model, test_points, options.tightness_horizon,
                                            options.tightness_reps, radii, options.seed,
                                            options.workers);
  } catch (const Error& e) {
    report.tightness_error = e.what();
  }

  if (report.splitting && report.splitting_error.empty() && options.crossing_reps > 0) {
    const auto& cert = *report.splitting;
    CrossingCheck cc{.result = crossing_probability(model, cert.x_high, cert.x_low, cert.m,
                                                    options.crossing_reps, options.seed,
                                                    options.workers),
                     .bound = cert.prob_bound};
    cc.sigma = binomial_sigma(cc.bound, options.crossing_reps);
    cc.sound = cc.result.probability.estimate >= cc.bound - 3.0 * cc.sigma;
    report.empirical_crossing = cc;
  }

  if (!report.normal_pair) {
    report.failure_reason = "normal-pair-invalid";
  } else if (!c1.established) {
    report.failure_reason = "condition-i-unestablished";
  } else if (!c2.established) {
    report.failure_reason = "condition-ii-unestablished";
  } else if (!report.splitting || !report.splitting_error.empty()) {
    report.failure_reason = "splitting-failed";
  } else if (!report.tightness || !report.tightness->pass) {
    report.failure_reason = "tightness-failed";
  } else if (report.empirical_crossing && !report.empirical_crossing->sound) {
    report.failure_reason = "crossing-check-failed";
  }
  report.certified = report.failure_reason.empty();
  return report;
}

}  // namespace monostab
