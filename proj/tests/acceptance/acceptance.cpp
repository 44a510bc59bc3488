// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "cli.hpp"
#include "monostab/certificate.hpp"
#include "monostab/montecarlo.hpp"
#include "support/models.hpp"

using namespace monostab;
using namespace testsupport;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  std::vector<std::string> problems;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      problems.push_back(what);
    }
  }
};

struct Stopwatch {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

std::string fmt(double x, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::size_t workers() { return std::max(1u, std::thread::hardware_concurrency()); }

// ---------------------------------------------------------------------------

Outcome ac1() {
  Outcome o;
  auto m = builtin("ar1");
  Stopwatch sw;
  CounterRng rng(12345, "normal-pair", 0);
  auto pair = verify_normal_pair(m, shk(0.5), shk(-0.5), 1000, rng);
  auto cert = build_splitting_certificate(m, pair, sv(-1), sv(1));
  const double secs = sw.seconds();

  // Hand iteration of x -> 0.5 x + v: limits v / (1 - 0.5), split at their
  // midpoint, and the first k where both chains are strictly past it.
  const double C = 0.5 / 0.5, C_star = -0.5 / 0.5, split = 0.5 * (C + C_star);
  std::size_t m_oracle = 0;
  for (double z = -1, y = 1; !(z > split && y < split);) {
    z = 0.5 * z + 0.5;
    y = 0.5 * y - 0.5;
    ++m_oracle;
  }
  const double bound_oracle = std::pow(0.25 * 0.25, static_cast<double>(m_oracle));
  const double ulp = std::nextafter(bound_oracle, 1.0) - bound_oracle;

  o.require(std::abs(cert.C[0] - C) <= 1e-9, "C = " + fmt(cert.C[0], 17));
  o.require(std::abs(cert.C_star[0] - C_star) <= 1e-9, "C* = " + fmt(cert.C_star[0], 17));
  o.require(std::abs(cert.x_split[0] - split) <= 1e-9, "x* = " + fmt(cert.x_split[0], 17));
  o.require(cert.m == 2 && m_oracle == 2, "m = " + std::to_string(cert.m));
  o.require(std::abs(cert.prob_bound - 1.0 / 256.0) <= ulp && bound_oracle == 1.0 / 256.0,
            "prob_bound = " + fmt(cert.prob_bound, 17));
  o.require(audit_certificate(m, cert, 1e-9).empty(), "audit failed");
  o.require(secs < 1.0, "runtime " + fmt(secs) + " s");
  o.detail = "C=" + fmt(cert.C[0], 17) + " C*=" + fmt(cert.C_star[0], 17) + " x*=" +
             fmt(cert.x_split[0], 17) + " m=" + std::to_string(cert.m) +
             " bound=" + fmt(cert.prob_bound, 17) + " in " + fmt(secs, 3) + " s";
  return o;
}

// P(T <= u) for T = V - V', V, V' iid uniform(-1, 1).
double triangular_cdf(double u) {
  if (u <= -2) return 0;
  if (u <= 0) return (2 + u) * (2 + u) / 8;
  if (u < 2) return 1 - (2 - u) * (2 - u) / 8;
  return 1;
}

// Exact P(X_high,2 <= X_low,2) for independent chains from 1 and -1:
// 0.5 + 0.5 S + T <= 0 with S, T independent triangular on [-2, 2].
// The integrand is a cubic on each of [-2,-1], [-1,0], [0,2], so Simpson's
// rule on those pieces is exact up to rounding.
double crossing_oracle() {
  auto f = [](double s) { return (2 - std::abs(s)) / 4 * triangular_cdf(-0.5 - 0.5 * s); };
  double total = 0;
  const double cuts[] = {-2, -1, 0, 2};
  for (int i = 0; i < 3; ++i) {
    const double a = cuts[i], b = cuts[i + 1];
    const int n = 64;
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int k = 1; k < n; ++k) s += f(a + k * h) * (k % 2 ? 4 : 2);
    total += s * h / 3;
  }
  return total;
}

Outcome ac2() {
  Outcome o;
  auto m = builtin("ar1");
  const std::size_t n = 1'000'000;
  Stopwatch sw;
  auto res = crossing_probability(m, sv(1), sv(-1), 2, n, 12345, workers());
  const double secs = sw.seconds();
  const double bound = 1.0 / 256.0;
  const double sigma = binomial_sigma(bound, n);
  const double est = res.probability.estimate;
  const double truth = crossing_oracle();
  const double sigma_est = binomial_sigma(truth, n);
  o.require(est >= bound - 3 * sigma, "estimate " + fmt(est) + " below bound - 3 sigma");
  o.require(std::abs(est - truth) <= 5 * sigma_est,
            "estimate " + fmt(est) + " disagrees with exact " + fmt(truth));
  o.require(secs < 30.0, "runtime " + fmt(secs) + " s");
  o.detail = "estimate=" + fmt(est) + " exact=" + fmt(truth) + " bound=" + fmt(bound) +
             " 3sigma=" + fmt(3 * sigma) + " in " + fmt(secs, 3) + " s";
  return o;
}

Outcome ac3() {
  Outcome o;
  Stopwatch sw;
  std::size_t total = 0;
  for (const auto& name : family_configs()) {
    auto m = builtin(name);
    StateVector lo = m.default_test_points().front(), hi = lo;
    for (const auto& p : m.default_test_points()) {
      lo = pointwise_min(lo, p);
      hi = pointwise_max(hi, p);
    }
    auto c = coupling_test(m, lo, hi, 100, 1000, 12345, workers());
    total += c.violations;
    std::string what = name + ": " + std::to_string(c.violations) + " violations";
    if (!c.witnesses.empty()) {
      const auto& w = c.witnesses.front();
      what += " (rep " + std::to_string(w.rep) + " step " + std::to_string(w.step) + ": low " +
              to_string(w.low_state) + " high " + to_string(w.high_state) + ")";
    }
    o.require(c.violations == 0, what);
  }
  const double secs = sw.seconds();
  o.require(secs < 60.0, "runtime " + fmt(secs) + " s");
  o.detail = std::to_string(family_configs().size()) + " models x 1000 reps x 100 steps, " +
             std::to_string(total) + " violations in " + fmt(secs, 3) + " s";
  return o;
}

Outcome ac4() {
  Outcome o;
  struct Case {
    std::string model;
    std::vector<StateVector> starts;
  };
  const std::vector<Case> cases{{"ar1", {sv(-10), sv(0), sv(10)}},
                                {"rca1", {sv(0), sv(10), sv(100)}},
                                {"resource", {sv(0), sv(10), sv(100)}}};
  for (const auto& c : cases) {
    auto m = builtin(c.model);
    Stopwatch sw;
    auto rep = convergence_report(m, c.starts, 1000, 100000, 1, Metric::kKolmogorov, 0.05, 12345,
                                  workers());
    const double secs = sw.seconds();
    o.require(rep.pass, c.model + ": max KS " + fmt(rep.max_final_distance));
    o.require(secs < 120.0, c.model + ": runtime " + fmt(secs) + " s");
    if (!o.detail.empty()) o.detail += ", ";
    o.detail += c.model + " KS=" + fmt(rep.max_final_distance, 4) + " (" + fmt(secs, 3) + " s)";
  }
  return o;
}

Outcome ac5() {
  Outcome o;
  auto expanding = cli({"certify", "--model", model_path("ar1_expanding")});
  o.require(expanding.code == cli::kVerdictFailed,
            "a=1.2 certify exit " + std::to_string(expanding.code));
  o.require(expanding.err.find("condition-i-unestablished") != std::string::npos,
            "a=1.2 failure reason missing");

  auto unstable = builtin("ar1_unstable");
  auto t = tightness_diagnostic(unstable, {sv(1)}, 200, 1000, default_radii({sv(1)}), 12345, workers());
  o.require(!t.pass, "a=1.5 tightness passed");
  auto tcli = cli({"tightness", "--model", model_path("ar1_unstable")});
  o.require(tcli.code == cli::kVerdictFailed, "a=1.5 tightness exit " + std::to_string(tcli.code));

  auto identity = ar1(1.0, Marginal::point_mass(0.0));
  auto probe = probe_unique_fixed_point(identity, shk(0), {sv(0), sv(1)});
  o.require(probe.verdict == UniquenessVerdict::kRefuted, "identity verdict " + to_string(probe.verdict));

  o.detail = "a=1.2 exit " + std::to_string(expanding.code) + ", a=1.5 tightness exit " +
             std::to_string(tcli.code) + ", identity probe " + to_string(probe.verdict);
  return o;
}

Outcome ac6() {
  Outcome o;
  CounterRng rng(12345, "acceptance", 6);
  auto ar = builtin("ar1");
  auto est = estimate_contraction(ar, shk(0.5), sampling_box(ar.state_space(), 100), 2000, rng);
  o.require(est.constant_lower_bound == 0.5, "AR contraction " + fmt(est.constant_lower_bound, 17));

  auto res = resource1(Marginal::uniform(0, 1));
  auto fp = iterate_map(res, shk(0.25), sv(0));
  double lo = 0, hi = 2;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (mid - (0.5 * std::sqrt(mid) + 0.25) < 0 ? lo : hi) = mid;
  }
  const double oracle = 0.5 * (lo + hi);
  o.require(std::abs(fp.point[0] - oracle) <= 1e-6, "resource fixed point " + fmt(fp.point[0], 12));
  o.require(std::abs(oracle - 0.654508) <= 1e-6, "bisection oracle " + fmt(oracle, 12));

  auto conc_res = check_concavity(res, shk(0.25), OrderInterval(sv(0), sv(4)), 2000, 1e-9, rng);
  auto conc_lin = check_concavity(ar, shk(0.5), OrderInterval(sv(-10), sv(10)), 2000, 1e-9, rng);
  auto square = scalar_model([](double x) { return x * x; }, StateSpace::nonnegative(1));
  auto conc_sq = check_concavity(square, shk(0), OrderInterval(sv(0), sv(2)), 2000, 1e-9, rng);
  o.require(conc_res.coords[0].verdict == ConcavityKind::kStrictlyConcaveEvidence,
            "resource " + to_string(conc_res.coords[0].verdict));
  o.require(conc_lin.coords[0].verdict == ConcavityKind::kConcaveNotStrict,
            "linear " + to_string(conc_lin.coords[0].verdict));
  o.require(conc_sq.coords[0].verdict == ConcavityKind::kViolated && conc_sq.coords[0].witness,
            "x^2 " + to_string(conc_sq.coords[0].verdict));

  o.detail = "K=" + fmt(est.constant_lower_bound, 17) + ", fixed point " + fmt(fp.point[0], 10) +
             " vs bisection " + fmt(oracle, 10) + ", concavity " + to_string(conc_res.coords[0].verdict) +
             "/" + to_string(conc_lin.coords[0].verdict) + "/" + to_string(conc_sq.coords[0].verdict);
  return o;
}

Outcome ac7() {
  Outcome o;
  CounterRng rng(12345, "acceptance", 7);
  std::size_t checked = 0;
  for (std::size_t n : {1u, 2u, 3u}) {
    auto m = bounded_box_model(n);
    const auto least = *m.state_space().least_element();
    const auto greatest = *m.state_space().greatest_element();
    const ShockPair pair{ShockVector::constant(n, 4), ShockVector::constant(n, 1)};
    std::vector<StateVector> pts{least, greatest};
    for (int k = 0; k < 20; ++k) pts.push_back(sample_uniform(OrderInterval(least, greatest), rng));
    for (const auto& x : pts) {
      auto b = find_bounding_pair(m, pair, x);
      ++checked;
      o.require(b.y_lo == least && b.y_hi == greatest && b.search_steps == 0 &&
                    b.lo_source == BoundSource::kExtremeElement &&
                    b.hi_source == BoundSource::kExtremeElement,
                "n=" + std::to_string(n) + " x=" + to_string(x) + " searched");
    }
    CertifyOptions opts;
    opts.crossing_reps = 20000;
    auto r = certify(m, pair, {.kind = Route::kCompact}, pts, opts);
    o.require(r.condition_ii.established, "n=" + std::to_string(n) + " condition (ii) not established");
    for (const auto& p : r.condition_ii.points) {
      o.require(p.bounds && p.bounds->y_lo == least && p.bounds->y_hi == greatest,
                "n=" + std::to_string(n) + " certify used non-extreme bounds");
    }
    o.require(r.certified, "n=" + std::to_string(n) + " " + r.overall());
  }
  o.detail = std::to_string(checked) + " points on [0,10]^n, n=1..3, all bounded by extremes with 0 search steps";
  return o;
}

Outcome ac8() {
  Outcome o;
  auto twice = [&](const std::string& label, std::vector<std::string> args) {
    auto with = [&](const std::string& w) {
      auto a = args;
      a.insert(a.end(), {"--seed", "2024", "--workers", w});
      return cli(a);
    };
    auto a = with("1"), b = with("1"), c = with("8");
    o.require(a.code == b.code && a.code == c.code, label + ": exit codes differ");
    o.require(a.out == b.out, label + ": repeated runs differ");
    o.require(a.out == c.out, label + ": 1 vs 8 workers differ");
    o.require(!a.out.empty(), label + ": empty output");
  };
  twice("certify ar1", {"certify", "--model", model_path("ar1")});
  twice("certify rca1", {"certify", "--model", model_path("rca1")});
  twice("couple resource", {"couple", "--model", model_path("resource")});
  twice("converge ar1", {"converge", "--model", model_path("ar1"), "--starts", "-10,0,10",
                         "--samples", "20000"});
  twice("tightness rca1", {"tightness", "--model", model_path("rca1")});
  twice("simulate ar2", {"simulate", "--model", model_path("ar2"), "--reps", "20"});
  o.detail = "6 workflows byte-identical across repeats and 1 vs 8 workers";
  return o;
}

Outcome ac9() {
  Outcome o;
  auto m = builtin("piecewise_exp");
  const auto& pair = *m.default_pair();
  const double b_c = m.metadata().values.at("b_c");
  std::vector<StateVector> starts{sv(-10), sv(-1), sv(0), sv(1), sv(3), sv(b_c)};
  auto probe = probe_unique_fixed_point(m, pair.v_lo, starts);
  o.require(probe.verdict == UniquenessVerdict::kSupported, "probe " + to_string(probe.verdict));

  auto report = certify(m, pair, {.kind = Route::kDirect}, m.default_test_points());
  o.require(report.certified, "certify: " + report.overall());

  // sign changes of f(x) - x = w(x, 0) - x on a fine grid over [-10, b_c]
  const int n = 1'000'000;
  int changes = 0;
  double root = std::numeric_limits<double>::quiet_NaN();
  double prev = m.apply(sv(-10), shk(0))[0] + 10;
  for (int i = 1; i <= n; ++i) {
    const double x = -10 + (b_c + 10) * i / n;
    const double g = m.apply(sv(x), shk(0))[0] - x;
    if ((g > 0) != (prev > 0)) {
      ++changes;
      root = x;
    }
    prev = g;
  }
  o.require(changes == 1, std::to_string(changes) + " sign changes");
  if (probe.limits.front()) {
    o.require(std::abs((*probe.limits.front())[0] - root) < 1e-3, "probe limit away from grid root");
  }
  o.detail = "probe " + to_string(probe.verdict) + ", " + report.overall() + " (m=" +
             (report.splitting ? std::to_string(report.splitting->m) : std::string("-")) + "), " +
             std::to_string(changes) + " sign change near " + fmt(root) + " on [-10, " + fmt(b_c) + "]";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"AC1 AR(1) splitting certificate matches hand iteration", ac1},
      {"AC2 empirical crossing probability dominates the bound", ac2},
      {"AC3 shared-shock coupling preserves order for every family", ac3},
      {"AC4 marginals from separated starts converge (Kolmogorov < 0.05)", ac4},
      {"AC5 negative controls fail as expected", ac5},
      {"AC6 analysis oracles", ac6},
      {"AC7 bounded state spaces use the extreme elements", ac7},
      {"AC8 outputs are byte-identical across runs and worker counts", ac8},
      {"AC9 piecewise exp/concave model certified via the direct route", ac9},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o.pass = false;
      o.problems.push_back(std::string("exception: ") + e.what());
    }
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << " | " << o.detail;
    for (const auto& p : o.problems) std::cout << " | " << p;
    std::cout << std::endl;
    if (!o.pass) ++failed;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
