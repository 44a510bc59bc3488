#include "cli.hpp"

#include <charconv>
#include <cstdint>
#include <cstdlib>
#include <iomanip>
#include <optional>
#include <set>
#include <stdexcept>

#include <CLI11.hpp>

#include "monostab/config.hpp"
#include "monostab/families.hpp"
#include "monostab/report.hpp"

namespace monostab::cli {

namespace {

using nlohmann::json;

constexpr std::uint64_t kDefaultSeed = 12345;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

double parse_double(std::string_view raw, const std::string& what) {
  const std::string s = trim(raw);
  double v = 0.0;
  const char* first = s.data();
  if (!s.empty() && s[0] == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw UsageError(what + ": '" + s + "' is not a finite number");
  }
  return v;
}

std::vector<double> parse_list(const std::string& s, char sep, const std::string& what) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const auto end = s.find(sep, start);
    const std::string piece = s.substr(start, end == std::string::npos ? std::string::npos : end - start);
    if (!trim(piece).empty() || end != std::string::npos) out.push_back(parse_double(piece, what));
    if (end == std::string::npos) break;
    start = end + 1;
  }
  if (out.empty()) throw UsageError(what + ": empty list");
  return out;
}

std::vector<double> parse_vector(const std::string& s, std::size_t n, const std::string& what) {
  auto v = parse_list(s, ',', what);
  if (v.size() != n) {
    throw UsageError(what + ": expected " + std::to_string(n) + " coordinates, got " +
                     std::to_string(v.size()));
  }
  return v;
}

/// Points are separated by ';' and coordinates by ','. In one dimension a
/// plain comma list is a list of points.
std::vector<StateVector> parse_points(const std::string& s, std::size_t n, const std::string& what) {
  std::vector<StateVector> out;
  if (s.find(';') == std::string::npos && n == 1) {
    for (double x : parse_list(s, ',', what)) out.push_back(StateVector{x});
    return out;
  }
  std::size_t start = 0;
  while (start < s.size()) {
    const auto end = s.find(';', start);
    const std::string piece = s.substr(start, end == std::string::npos ? std::string::npos : end - start);
    if (!trim(piece).empty()) out.emplace_back(parse_vector(piece, n, what));
    if (end == std::string::npos) break;
    start = end + 1;
  }
  if (out.empty()) throw UsageError(what + ": no points given");
  return out;
}

/// The optional "run" object of a model file: defaults for command-line flags.
class RunSection {
 public:
  explicit RunSection(const json& config) {
    auto it = config.find("run");
    if (it == config.end()) return;
    if (!it->is_object()) throw ConfigError("$.run", "expected an object");
    static const std::set<std::string> allowed = {
        "seed",          "pair",           "route",          "a",
        "b",             "test_points",    "tol",            "max_iter",
        "search_cap",    "dominance_samples", "sampling_radius", "contraction_pairs",
        "concavity_triples", "concavity_tol", "tightness_horizon", "tightness_reps",
        "crossing_reps", "x0",             "x_low",          "x_high",
        "starts",        "horizon",        "reps",           "burn_in",
        "samples",       "thinning",       "metric",         "threshold",
        "radii"};
    for (const auto& [key, value] : it->items()) {
      if (!allowed.contains(key)) throw ConfigError(path(key), "unknown field");
    }
    run_ = *it;
  }

  bool has(const std::string& key) const { return run_.contains(key); }

  double number(const std::string& key) const {
    const json& j = run_.at(key);
    if (!j.is_number() || !std::isfinite(j.get<double>())) {
      throw ConfigError(path(key), "expected a finite number");
    }
    return j.get<double>();
  }

  std::uint64_t count(const std::string& key) const {
    const json& j = run_.at(key);
    if (!j.is_number_unsigned()) throw ConfigError(path(key), "expected a nonnegative integer");
    return j.get<std::uint64_t>();
  }

  std::string text(const std::string& key) const {
    const json& j = run_.at(key);
    if (!j.is_string()) throw ConfigError(path(key), "expected a string");
    return j.get<std::string>();
  }

  std::vector<double> vector(const json& j, std::size_t n, const std::string& p) const {
    std::vector<double> out;
    if (j.is_number()) {
      out.push_back(j.get<double>());
    } else if (j.is_array()) {
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_number()) throw ConfigError(p + "[" + std::to_string(i) + "]", "expected a number");
        out.push_back(j[i].get<double>());
      }
    } else {
      throw ConfigError(p, "expected a number or an array of numbers");
    }
    if (out.size() != n) {
      throw ConfigError(p, "expected " + std::to_string(n) + " coordinates, got " +
                               std::to_string(out.size()));
    }
    for (double x : out) {
      if (!std::isfinite(x)) throw ConfigError(p, "expected finite numbers");
    }
    return out;
  }

  std::vector<double> vector(const std::string& key, std::size_t n) const {
    return vector(run_.at(key), n, path(key));
  }

  std::vector<double> numbers(const std::string& key) const {
    const json& j = run_.at(key);
    if (!j.is_array() || j.empty()) throw ConfigError(path(key), "expected a nonempty array");
    return vector(j, j.size(), path(key));
  }

  std::vector<StateVector> points(const std::string& key, std::size_t n) const {
    const json& j = run_.at(key);
    if (!j.is_array() || j.empty()) throw ConfigError(path(key), "expected a nonempty array of points");
    std::vector<StateVector> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
      out.emplace_back(vector(j[i], n, path(key) + "[" + std::to_string(i) + "]"));
    }
    return out;
  }

  ShockPair pair(std::size_t k) const {
    const json& j = run_.at("pair");
    if (!j.is_object()) throw ConfigError(path("pair"), "expected {\"v_hi\": ..., \"v_lo\": ...}");
    for (const auto& [key, value] : j.items()) {
      if (key != "v_hi" && key != "v_lo") throw ConfigError(path("pair") + "." + key, "unknown field");
    }
    if (!j.contains("v_hi")) throw ConfigError(path("pair") + ".v_hi", "missing required field");
    if (!j.contains("v_lo")) throw ConfigError(path("pair") + ".v_lo", "missing required field");
    return {ShockVector(vector(j["v_hi"], k, path("pair") + ".v_hi")),
            ShockVector(vector(j["v_lo"], k, path("pair") + ".v_lo"))};
  }

 private:
  static std::string path(const std::string& key) { return "$.run." + key; }
  json run_ = json::object();
};

/// Options shared by every model-driven subcommand.
struct Common {
  std::string model_path;
  std::uint64_t seed = 0;
  CLI::Option* seed_opt = nullptr;
  std::size_t workers = 0;
  std::string out_path;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--model", c.model_path, "Model configuration file (JSON)")->required();
  c.seed_opt = sub->add_option("--seed", c.seed, "Master seed (default: $MONOSTAB_SEED, else 12345)");
  sub->add_option("--workers", c.workers, "Worker threads (default: available parallelism)");
  sub->add_option("--out", c.out_path, "Output file (default: standard output)");
}

struct Loaded {
  json config;
  TransitionModel model;
  RunSection run;
  RunContext ctx;
};

std::uint64_t resolve_seed(const Common& c, const RunSection& run) {
  if (c.seed_opt->count() > 0) return c.seed;
  if (run.has("seed")) return run.count("seed");
  if (const char* env = std::getenv("MONOSTAB_SEED"); env && *env) {
    std::uint64_t v = 0;
    const std::string s = env;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
      throw UsageError("MONOSTAB_SEED='" + s + "' is not an unsigned integer");
    }
    return v;
  }
  return kDefaultSeed;
}

Loaded load(const Common& c) {
  json config = read_config_file(c.model_path);
  TransitionModel model = model_from_json(config);
  RunSection run(config);
  RunContext ctx{.config = config, .config_hash = config_hash(config), .seed = resolve_seed(c, run)};
  return Loaded{std::move(config), std::move(model), std::move(run), std::move(ctx)};
}

double pick(const CLI::Option* opt, double flag, const RunSection& run, const std::string& key,
            double fallback) {
  if (opt->count() > 0) return flag;
  return run.has(key) ? run.number(key) : fallback;
}

std::size_t pick(const CLI::Option* opt, std::size_t flag, const RunSection& run,
                 const std::string& key, std::size_t fallback) {
  if (opt->count() > 0) return flag;
  return run.has(key) ? static_cast<std::size_t>(run.count(key)) : fallback;
}

std::vector<StateVector> pick_points(const CLI::Option* opt, const std::string& flag,
                                     const RunSection& run, const std::string& key,
                                     const TransitionModel& model, const std::string& what) {
  if (opt->count() > 0) return parse_points(flag, model.state_dim(), what);
  if (run.has(key)) return run.points(key, model.state_dim());
  return model.default_test_points();
}

std::optional<StateVector> pick_vector(const CLI::Option* opt, const std::string& flag,
                                       const RunSection& run, const std::string& key,
                                       std::size_t n, const std::string& what) {
  if (opt->count() > 0) return StateVector(parse_vector(flag, n, what));
  if (run.has(key)) return StateVector(run.vector(key, n));
  return std::nullopt;
}

void emit(const std::string& content, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << content;
  } else {
    write_file_atomic(out_path, content);
  }
}

StateVector extreme(const std::vector<StateVector>& pts, bool upper) {
  StateVector e = pts.front();
  for (const auto& p : pts) e = upper ? pointwise_max(e, p) : pointwise_min(e, p);
  return e;
}

// ---- certify ---------------------------------------------------------------

struct CertifyArgs {
  Common common;
  std::vector<std::string> pair;
  CLI::Option* pair_opt = nullptr;
  std::string route;
  CLI::Option* route_opt = nullptr;
  std::string a, b;
  CLI::Option* a_opt = nullptr;
  CLI::Option* b_opt = nullptr;
  std::string test_points;
  CLI::Option* test_points_opt = nullptr;
  double tol = 0, search_cap = 0, sampling_radius = 0, concavity_tol = 0;
  std::size_t max_iter = 0, dominance_samples = 0, contraction_pairs = 0, concavity_triples = 0,
              tightness_horizon = 0, tightness_reps = 0, crossing_reps = 0;
  CLI::Option *tol_opt, *search_cap_opt, *sampling_radius_opt, *concavity_tol_opt, *max_iter_opt,
      *dominance_samples_opt, *contraction_pairs_opt, *concavity_triples_opt,
      *tightness_horizon_opt, *tightness_reps_opt, *crossing_reps_opt;
};

void add_certify(CLI::App& app, CertifyArgs& a) {
  auto* sub = app.add_subcommand("certify", "Build a stability certificate");
  add_common(sub, a.common);
  a.pair_opt = sub->add_option("--pair", a.pair, "Ordered normal pair: V_HI V_LO (comma-separated vectors)")
                   ->expected(2);
  a.route_opt = sub->add_option("--route", a.route, "direct | contraction | concave | compact");
  a.a_opt = sub->add_option("--a", a.a, "Lower bracket point for the concave route");
  a.b_opt = sub->add_option("--b", a.b, "Upper bracket point for the concave route");
  a.test_points_opt = sub->add_option("--test-points", a.test_points,
                                      "Test points: ';' between points, ',' between coordinates");
  a.tol_opt = sub->add_option("--tol", a.tol, "Fixed-point tolerance (1e-9)");
  a.max_iter_opt = sub->add_option("--max-iter", a.max_iter, "Iteration limit (10000)");
  a.search_cap_opt = sub->add_option("--search-cap", a.search_cap, "Bounding search offset cap (1e9)");
  a.dominance_samples_opt = sub->add_option("--dominance-samples", a.dominance_samples, "(1000)");
  a.sampling_radius_opt = sub->add_option("--sampling-radius", a.sampling_radius, "(100)");
  a.contraction_pairs_opt = sub->add_option("--contraction-pairs", a.contraction_pairs, "(2000)");
  a.concavity_triples_opt = sub->add_option("--concavity-triples", a.concavity_triples, "(2000)");
  a.concavity_tol_opt = sub->add_option("--concavity-tol", a.concavity_tol, "(1e-9)");
  a.tightness_horizon_opt = sub->add_option("--tightness-horizon", a.tightness_horizon, "(200)");
  a.tightness_reps_opt = sub->add_option("--tightness-reps", a.tightness_reps, "(1000)");
  a.crossing_reps_opt = sub->add_option("--crossing-reps", a.crossing_reps,
                                        "Crossing check replications, 0 to skip (100000)");
}

int cmd_certify(const CertifyArgs& a, std::ostream& out, std::ostream& err) {
  Loaded L = load(a.common);
  const auto& run = L.run;
  const auto& model = L.model;

  ShockPair pair = [&]() -> ShockPair {
    if (a.pair_opt->count() > 0) {
      return {ShockVector(parse_vector(a.pair[0], model.shock_dim(), "--pair v_hi")),
              ShockVector(parse_vector(a.pair[1], model.shock_dim(), "--pair v_lo"))};
    }
    if (run.has("pair")) return run.pair(model.shock_dim());
    if (model.default_pair()) return *model.default_pair();
    throw UsageError("no shock pair: pass --pair or set run.pair");
  }();

  RouteSpec route;
  const std::string route_name =
      a.route_opt->count() > 0 ? a.route : (run.has("route") ? run.text("route") : "direct");
  try {
    route.kind = route_from_string(route_name);
  } catch (const ConfigError& e) {
    throw UsageError(e.what());
  }
  route.a = pick_vector(a.a_opt, a.a, run, "a", model.state_dim(), "--a");
  route.b = pick_vector(a.b_opt, a.b, run, "b", model.state_dim(), "--b");
  if (route.kind == Route::kConcave && (!route.a || !route.b)) {
    throw UsageError("the concave route needs --a and --b (or run.a and run.b)");
  }

  const auto tests = pick_points(a.test_points_opt, a.test_points, run, "test_points", model, "--test-points");

  CertifyOptions o;
  o.tol = pick(a.tol_opt, a.tol, run, "tol", o.tol);
  o.max_iter = pick(a.max_iter_opt, a.max_iter, run, "max_iter", o.max_iter);
  o.search_cap = pick(a.search_cap_opt, a.search_cap, run, "search_cap", o.search_cap);
  o.dominance_samples = pick(a.dominance_samples_opt, a.dominance_samples, run, "dominance_samples", o.dominance_samples);
  o.sampling_radius = pick(a.sampling_radius_opt, a.sampling_radius, run, "sampling_radius", o.sampling_radius);
  o.contraction_pairs = pick(a.contraction_pairs_opt, a.contraction_pairs, run, "contraction_pairs", o.contraction_pairs);
  o.concavity_triples = pick(a.concavity_triples_opt, a.concavity_triples, run, "concavity_triples", o.concavity_triples);
  o.concavity_tol = pick(a.concavity_tol_opt, a.concavity_tol, run, "concavity_tol", o.concavity_tol);
  o.tightness_horizon = pick(a.tightness_horizon_opt, a.tightness_horizon, run, "tightness_horizon", o.tightness_horizon);
  o.tightness_reps = pick(a.tightness_reps_opt, a.tightness_reps, run, "tightness_reps", o.tightness_reps);
  o.crossing_reps = pick(a.crossing_reps_opt, a.crossing_reps, run, "crossing_reps", o.crossing_reps);
  if (run.has("radii")) o.tightness_radii = run.numbers("radii");
  o.seed = L.ctx.seed;
  o.workers = a.common.workers;

  const StabilityReport report = certify(model, pair, route, tests, o);
  emit(render(certificate_document(report, L.ctx)), a.common.out_path, out);
  if (!a.common.out_path.empty()) out << report.overall() << "\n";
  if (!report.certified) {
    err << "verdict: " << report.overall() << "\n";
    return kVerdictFailed;
  }
  return kPass;
}

// ---- simulate --------------------------------------------------------------

struct SimulateArgs {
  Common common;
  std::string x0;
  CLI::Option* x0_opt = nullptr;
  std::size_t horizon = 0, reps = 0;
  CLI::Option *horizon_opt, *reps_opt;
};

void add_simulate(CLI::App& app, SimulateArgs& a) {
  auto* sub = app.add_subcommand("simulate", "Write simulated trajectories as CSV");
  add_common(sub, a.common);
  a.x0_opt = sub->add_option("--x0", a.x0, "Start state (default: first test point)");
  a.horizon_opt = sub->add_option("--horizon", a.horizon, "Transitions per trajectory (100)");
  a.reps_opt = sub->add_option("--reps", a.reps, "Number of trajectories (1)");
}

int cmd_simulate(const SimulateArgs& a, std::ostream& out, std::ostream&) {
  Loaded L = load(a.common);
  const auto x0 = pick_vector(a.x0_opt, a.x0, L.run, "x0", L.model.state_dim(), "--x0")
                      .value_or(L.model.default_test_points().front());
  const std::size_t horizon = pick(a.horizon_opt, a.horizon, L.run, "horizon", std::size_t{100});
  const std::size_t reps = pick(a.reps_opt, a.reps, L.run, "reps", std::size_t{1});
  const auto runs = simulate_replications(L.model, x0, horizon, reps, L.ctx.seed, a.common.workers);
  emit(trajectories_csv(runs, L.ctx), a.common.out_path, out);
  return kPass;
}

// ---- couple ----------------------------------------------------------------

struct CoupleArgs {
  Common common;
  std::string x_low, x_high;
  CLI::Option *x_low_opt, *x_high_opt;
  std::size_t horizon = 0, reps = 0;
  CLI::Option *horizon_opt, *reps_opt;
};

void add_couple(CLI::App& app, CoupleArgs& a) {
  auto* sub = app.add_subcommand("couple", "Check order preservation under shared shocks");
  add_common(sub, a.common);
  a.x_low_opt = sub->add_option("--x-low", a.x_low, "Lower start (default: min of test points)");
  a.x_high_opt = sub->add_option("--x-high", a.x_high, "Upper start (default: max of test points)");
  a.horizon_opt = sub->add_option("--horizon", a.horizon, "Transitions (100)");
  a.reps_opt = sub->add_option("--reps", a.reps, "Replications (1000)");
}

int cmd_couple(const CoupleArgs& a, std::ostream& out, std::ostream& err) {
  Loaded L = load(a.common);
  const std::size_t n = L.model.state_dim();
  const auto& tests = L.model.default_test_points();
  const auto lo = pick_vector(a.x_low_opt, a.x_low, L.run, "x_low", n, "--x-low").value_or(extreme(tests, false));
  const auto hi = pick_vector(a.x_high_opt, a.x_high, L.run, "x_high", n, "--x-high").value_or(extreme(tests, true));
  if (!leq(lo, hi)) throw UsageError("--x-low must be <= --x-high");
  const std::size_t horizon = pick(a.horizon_opt, a.horizon, L.run, "horizon", std::size_t{100});
  const std::size_t reps = pick(a.reps_opt, a.reps, L.run, "reps", std::size_t{1000});
  const auto result = coupling_test(L.model, lo, hi, horizon, reps, L.ctx.seed, a.common.workers);
  json body = to_json(result);
  body["x_low"] = to_json(lo);
  body["x_high"] = to_json(hi);
  emit(render(report_document("coupling", std::move(body), L.ctx)), a.common.out_path, out);
  if (result.violations > 0) {
    const auto& w = result.witnesses.front();
    err << "coupling violated " << result.violations << " times; first at rep " << w.rep
        << " step " << w.step << ": low " << to_string(w.low_state) << ", high "
        << to_string(w.high_state) << "\n";
    return kVerdictFailed;
  }
  return kPass;
}

// ---- converge --------------------------------------------------------------

struct ConvergeArgs {
  Common common;
  std::string starts, metric;
  CLI::Option *starts_opt, *metric_opt;
  std::size_t burn_in = 0, samples = 0, thinning = 0;
  double threshold = 0;
  CLI::Option *burn_in_opt, *samples_opt, *thinning_opt, *threshold_opt;
};

void add_converge(CLI::App& app, ConvergeArgs& a) {
  auto* sub = app.add_subcommand("converge", "Compare long-run marginals from several starts");
  add_common(sub, a.common);
  a.starts_opt = sub->add_option("--starts", a.starts, "Starts: ';' between points, ',' between coordinates");
  a.metric_opt = sub->add_option("--metric", a.metric, "kolmogorov | wasserstein1 (kolmogorov)");
  a.burn_in_opt = sub->add_option("--burn-in", a.burn_in, "Discarded transitions (1000)");
  a.samples_opt = sub->add_option("--samples", a.samples, "Samples per start (100000)");
  a.thinning_opt = sub->add_option("--thinning", a.thinning, "Keep every k-th state (1)");
  a.threshold_opt = sub->add_option("--threshold", a.threshold, "Pass threshold (0.05)");
}

int cmd_converge(const ConvergeArgs& a, std::ostream& out, std::ostream& err) {
  Loaded L = load(a.common);
  const auto starts = pick_points(a.starts_opt, a.starts, L.run, "starts", L.model, "--starts");
  if (starts.size() < 2) throw UsageError("converge needs at least two starts");
  const std::string metric_name =
      a.metric_opt->count() > 0 ? a.metric : (L.run.has("metric") ? L.run.text("metric") : "kolmogorov");
  Metric metric;
  try {
    metric = metric_from_string(metric_name);
  } catch (const ConfigError& e) {
    throw UsageError(e.what());
  }
  const auto report = convergence_report(
      L.model, starts, pick(a.burn_in_opt, a.burn_in, L.run, "burn_in", std::size_t{1000}),
      pick(a.samples_opt, a.samples, L.run, "samples", std::size_t{100000}),
      pick(a.thinning_opt, a.thinning, L.run, "thinning", std::size_t{1}), metric,
      pick(a.threshold_opt, a.threshold, L.run, "threshold", 0.05), L.ctx.seed, a.common.workers);
  emit(render(report_document("convergence", to_json(report), L.ctx)), a.common.out_path, out);
  if (!report.pass) {
    err << "convergence failed: max final distance " << report.max_final_distance
        << " >= threshold " << report.threshold << "\n";
    return kVerdictFailed;
  }
  return kPass;
}

// ---- tightness -------------------------------------------------------------

struct TightnessArgs {
  Common common;
  std::string starts, radii;
  CLI::Option *starts_opt, *radii_opt;
  std::size_t horizon = 0, reps = 0;
  CLI::Option *horizon_opt, *reps_opt;
};

void add_tightness(CLI::App& app, TightnessArgs& a) {
  auto* sub = app.add_subcommand("tightness", "Tabulate mass outside growing radii over time");
  add_common(sub, a.common);
  a.starts_opt = sub->add_option("--starts", a.starts, "Starts (default: model test points)");
  a.radii_opt = sub->add_option("--radii", a.radii, "Increasing radii, comma-separated");
  a.horizon_opt = sub->add_option("--horizon", a.horizon, "Transitions (200)");
  a.reps_opt = sub->add_option("--reps", a.reps, "Replications per start (1000)");
}

int cmd_tightness(const TightnessArgs& a, std::ostream& out, std::ostream& err) {
  Loaded L = load(a.common);
  const auto starts = pick_points(a.starts_opt, a.starts, L.run, "starts", L.model, "--starts");
  std::vector<double> radii;
  if (a.radii_opt->count() > 0) {
    radii = parse_list(a.radii, ',', "--radii");
  } else if (L.run.has("radii")) {
    radii = L.run.numbers("radii");
  } else {
    radii = default_radii(starts);
  }
  for (std::size_t i = 1; i < radii.size(); ++i) {
    if (!(radii[i] > radii[i - 1])) throw UsageError("--radii must be increasing");
  }
  const auto report = tightness_diagnostic(
      L.model, starts, pick(a.horizon_opt, a.horizon, L.run, "horizon", std::size_t{200}),
      pick(a.reps_opt, a.reps, L.run, "reps", std::size_t{1000}), radii, L.ctx.seed,
      a.common.workers);
  emit(render(report_document("tightness", to_json(report), L.ctx)), a.common.out_path, out);
  if (!report.pass) {
    err << "tightness diagnostic failed: no radius keeps the mass outside below both epsilons\n";
    return kVerdictFailed;
  }
  return kPass;
}

// ---- models ----------------------------------------------------------------

int cmd_models(const std::string& action, const std::string& family, std::ostream& out) {
  if (action == "list") {
    for (const auto& f : builtin_families()) {
      out << std::left << std::setw(15) << f.name << f.summary << "\n";
    }
    return kPass;
  }
  if (action == "describe") {
    if (family.empty()) throw UsageError("models describe needs a family name");
    const FamilyInfo& f = family_info(family);
    out << f.name << "\n"
        << "  summary:     " << f.summary << "\n"
        << "  state space: " << f.state_space << "\n"
        << "  shocks:      " << f.shocks << "\n"
        << "  params:      " << f.params << "\n"
        << "  notes:       " << f.notes << "\n";
    return kPass;
  }
  throw UsageError("models expects 'list' or 'describe <family>'");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stability certificates and Monte Carlo checks for monotone Markov chains", "monostab"};
  app.set_version_flag("--version", std::string(version()));
  app.require_subcommand(1);

  CertifyArgs certify_args;
  SimulateArgs simulate_args;
  CoupleArgs couple_args;
  ConvergeArgs converge_args;
  TightnessArgs tightness_args;
  add_certify(app, certify_args);
  add_simulate(app, simulate_args);
  add_couple(app, couple_args);
  add_converge(app, converge_args);
  add_tightness(app, tightness_args);

  auto* models = app.add_subcommand("models", "List or describe the builtin model families");
  std::string models_action;
  std::string models_family;
  models->add_option("action", models_action, "list | describe")->required();
  models->add_option("family", models_family, "Family name for describe");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (app.got_subcommand("certify")) return cmd_certify(certify_args, out, err);
    if (app.got_subcommand("simulate")) return cmd_simulate(simulate_args, out, err);
    if (app.got_subcommand("couple")) return cmd_couple(couple_args, out, err);
    if (app.got_subcommand("converge")) return cmd_converge(converge_args, out, err);
    if (app.got_subcommand("tightness")) return cmd_tightness(tightness_args, out, err);
    if (app.got_subcommand("models")) return cmd_models(models_action, models_family, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kUsage;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace monostab::cli
