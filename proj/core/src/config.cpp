#include "monostab/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "monostab/families.hpp"
#include "monostab/rng.hpp"

namespace monostab {

namespace {

using nlohmann::json;

std::string key_path(const std::string& base, const std::string& key) { return base + "." + key; }
std::string index_path(const std::string& base, std::size_t i) {
  return base + "[" + std::to_string(i) + "]";
}

void require_object(const json& j, const std::string& path) {
  if (!j.is_object()) throw ConfigError(path, "expected an object");
}

void reject_unknown(const json& j, const std::set<std::string>& allowed, const std::string& path) {
  for (const auto& [key, value] : j.items()) {
    if (!allowed.contains(key)) throw ConfigError(key_path(path, key), "unknown field");
  }
}

const json& field(const json& j, const std::string& key, const std::string& path) {
  auto it = j.find(key);
  if (it == j.end()) throw ConfigError(key_path(path, key), "missing required field");
  return *it;
}

double number(const json& j, const std::string& path) {
  if (!j.is_number()) throw ConfigError(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ConfigError(path, "expected a finite number");
  return v;
}

double number_field(const json& j, const std::string& key, const std::string& path) {
  return number(field(j, key, path), key_path(path, key));
}

double number_or(const json& j, const std::string& key, double fallback, const std::string& path) {
  return j.contains(key) ? number_field(j, key, path) : fallback;
}

/// Missing or null means an infinite bound.
double bound_or_inf(const json& j, const std::string& key, double inf, const std::string& path) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return inf;
  return number(*it, key_path(path, key));
}

std::vector<double> number_array(const json& j, const std::string& path) {
  if (!j.is_array()) throw ConfigError(path, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], index_path(path, i)));
  return out;
}

Matrix matrix(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) throw ConfigError(path, "expected a nonempty array of rows");
  Matrix out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number_array(j[i], index_path(path, i)));
  return out;
}

Tensor3 tensor3(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) throw ConfigError(path, "expected a nonempty n x k x n array");
  Tensor3 out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(matrix(j[i], index_path(path, i)));
  return out;
}

template <class Fn>
auto with_path(const std::string& path, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const ConfigError& e) {
    if (!e.path().empty()) throw;
    throw ConfigError(path, e.what());
  }
}

PiecewiseLinear increasing_map(const json& j, const std::string& path) {
  require_object(j, path);
  const json& type = field(j, "type", path);
  if (!type.is_string()) throw ConfigError(key_path(path, "type"), "expected a string");
  const auto t = type.get<std::string>();
  if (t == "identity") {
    reject_unknown(j, {"type"}, path);
    return PiecewiseLinear::identity();
  }
  if (t == "linear") {
    reject_unknown(j, {"type", "slope", "intercept"}, path);
    const double slope = number_field(j, "slope", path);
    const double intercept = number_or(j, "intercept", 0.0, path);
    return PiecewiseLinear::linear(slope, intercept);
  }
  if (t == "piecewise_linear") {
    reject_unknown(j, {"type", "knots"}, path);
    const std::string kp = key_path(path, "knots");
    const json& knots = field(j, "knots", path);
    if (!knots.is_array()) throw ConfigError(kp, "expected an array of [x, y] pairs");
    std::vector<std::pair<double, double>> pts;
    for (std::size_t i = 0; i < knots.size(); ++i) {
      const auto xy = number_array(knots[i], index_path(kp, i));
      if (xy.size() != 2) throw ConfigError(index_path(kp, i), "expected an [x, y] pair");
      pts.emplace_back(xy[0], xy[1]);
    }
    return with_path(kp, [&] { return PiecewiseLinear(std::move(pts)); });
  }
  throw ConfigError(key_path(path, "type"),
                    "unknown map type '" + t + "' (expected identity, linear or piecewise_linear)");
}

void require_shock_count(const std::vector<Marginal>& shocks, std::size_t expected,
                         const std::string& family) {
  if (shocks.size() != expected) {
    throw ConfigError("$.shocks", family + " expects " + std::to_string(expected) +
                                      " marginals, got " + std::to_string(shocks.size()));
  }
}

}  // namespace

Marginal marginal_from_json(const json& j, const std::string& path) {
  require_object(j, path);
  const json& type = field(j, "type", path);
  if (!type.is_string()) throw ConfigError(key_path(path, "type"), "expected a string");
  const auto t = type.get<std::string>();
  return with_path(path, [&] {
    if (t == "uniform") {
      reject_unknown(j, {"type", "a", "b"}, path);
      return Marginal::uniform(number_field(j, "a", path), number_field(j, "b", path));
    }
    if (t == "exponential") {
      reject_unknown(j, {"type", "rate"}, path);
      return Marginal::exponential(number_field(j, "rate", path));
    }
    if (t == "discrete") {
      reject_unknown(j, {"type", "atoms", "weights"}, path);
      return Marginal::discrete(number_array(field(j, "atoms", path), key_path(path, "atoms")),
                                number_array(field(j, "weights", path), key_path(path, "weights")));
    }
    if (t == "truncated_normal") {
      reject_unknown(j, {"type", "mean", "sd", "lo", "hi"}, path);
      return Marginal::truncated_normal(number_field(j, "mean", path), number_field(j, "sd", path),
                                        bound_or_inf(j, "lo", -Interval::kInf, path),
                                        bound_or_inf(j, "hi", Interval::kInf, path));
    }
    throw ConfigError(key_path(path, "type"),
                      "unknown marginal type '" + t +
                          "' (expected uniform, exponential, discrete or truncated_normal)");
  });
}

nlohmann::json marginal_to_json(const Marginal& m) {
  auto bound = [](double b) { return std::isinf(b) ? json(nullptr) : json(b); };
  return std::visit(
      [&](const auto& k) -> json {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, UniformMarginal>) {
          return {{"type", "uniform"}, {"a", k.a}, {"b", k.b}};
        } else if constexpr (std::is_same_v<T, ExponentialMarginal>) {
          return {{"type", "exponential"}, {"rate", k.rate}};
        } else if constexpr (std::is_same_v<T, DiscreteMarginal>) {
          return {{"type", "discrete"}, {"atoms", k.atoms}, {"weights", k.weights}};
        } else {
          return {{"type", "truncated_normal"}, {"mean", k.mean}, {"sd", k.sd},
                  {"lo", bound(k.lo)},          {"hi", bound(k.hi)}};
        }
      },
      m.kind());
}

TransitionModel model_from_json(const json& config) {
  const std::string root = "$";
  require_object(config, root);
  reject_unknown(config, {"family", "params", "shocks", "run"}, root);

  const json& fam = field(config, "family", root);
  if (!fam.is_string()) throw ConfigError("$.family", "expected a string");
  const auto family = fam.get<std::string>();
  with_path("$.family", [&] { return family_info(family); });

  const json& params = field(config, "params", root);
  const std::string pp = "$.params";
  require_object(params, pp);

  const json& shocks_json = field(config, "shocks", root);
  if (!shocks_json.is_array() || shocks_json.empty()) {
    throw ConfigError("$.shocks", "expected a nonempty array of marginal descriptors");
  }
  std::vector<Marginal> shocks;
  for (std::size_t i = 0; i < shocks_json.size(); ++i) {
    shocks.push_back(marginal_from_json(shocks_json[i], index_path("$.shocks", i)));
  }

  if (family == "ar1") {
    reject_unknown(params, {"A"}, pp);
    Matrix A = matrix(field(params, "A", pp), key_path(pp, "A"));
    for (std::size_t i = 0; i < A.size(); ++i) {
      if (A[i].size() != A.size()) {
        throw ConfigError(index_path(key_path(pp, "A"), i),
                          "expected " + std::to_string(A.size()) + " entries (A must be square)");
      }
    }
    require_shock_count(shocks, A.size(), family);
    return with_path(pp, [&] { return make_ar1(A, ShockDistribution(std::move(shocks))); });
  }
  if (family == "rca1") {
    reject_unknown(params, {"f"}, pp);
    auto f = increasing_map(field(params, "f", pp), key_path(pp, "f"));
    require_shock_count(shocks, 2, family);
    return with_path(pp, [&] { return make_rca1(f, shocks[0], shocks[1]); });
  }
  if (family == "portfolio") {
    reject_unknown(params, {"g1", "g2", "budget_grid"}, pp);
    auto g1 = increasing_map(field(params, "g1", pp), key_path(pp, "g1"));
    auto g2 = increasing_map(field(params, "g2", pp), key_path(pp, "g2"));
    BudgetGrid grid;
    if (params.contains("budget_grid")) {
      const std::string gp = key_path(pp, "budget_grid");
      const json& g = params["budget_grid"];
      require_object(g, gp);
      reject_unknown(g, {"max", "points"}, gp);
      grid.max = number_or(g, "max", grid.max, gp);
      if (g.contains("points")) {
        if (!g["points"].is_number_unsigned()) {
          throw ConfigError(key_path(gp, "points"), "expected a positive integer");
        }
        grid.points = g["points"].get<std::size_t>();
      }
    }
    require_shock_count(shocks, 3, family);
    return with_path(pp, [&] { return make_portfolio(g1, g2, shocks[0], shocks[1], shocks[2], grid); });
  }
  if (family == "resource") {
    reject_unknown(params, {"c", "d"}, pp);
    Tensor3 c = tensor3(field(params, "c", pp), key_path(pp, "c"));
    Tensor3 d = tensor3(field(params, "d", pp), key_path(pp, "d"));
    require_shock_count(shocks, c.size(), family);
    return with_path(pp, [&] { return make_resource(c, d, ShockDistribution(std::move(shocks))); });
  }
  // piecewise_exp
  reject_unknown(params, {"delta", "c", "alpha", "beta", "b_search_cap"}, pp);
  PiecewiseExpParams p;
  p.delta = number_field(params, "delta", pp);
  p.c = number_field(params, "c", pp);
  p.alpha = number_or(params, "alpha", p.alpha, pp);
  p.beta = number_or(params, "beta", p.beta, pp);
  p.b_search_cap = number_or(params, "b_search_cap", p.b_search_cap, pp);
  require_shock_count(shocks, 1, family);
  return with_path(pp, [&] { return make_piecewise_exp(p, shocks[0]); });
}

TransitionModel model_from_string(const std::string& text) {
  json parsed;
  try {
    parsed = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("$", std::string("malformed JSON: ") + e.what());
  }
  return model_from_json(parsed);
}

nlohmann::json read_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read model file '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return json::parse(buffer.str());
  } catch (const json::parse_error& e) {
    throw ConfigError("$", "malformed JSON in '" + path.string() + "': " + e.what());
  }
}

TransitionModel load_model_file(const std::filesystem::path& path) {
  return model_from_json(read_config_file(path));
}

std::string config_hash(const nlohmann::json& config) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a64(config.dump())));
  return buf;
}

}  // namespace monostab
