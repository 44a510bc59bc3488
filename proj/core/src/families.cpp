#include "monostab/families.hpp"

#include <cmath>
#include <sstream>

namespace monostab {

namespace {

ShockPair quantile_pair(const ShockDistribution& shocks) {
  return ShockPair{shocks.quantile(0.75), shocks.quantile(0.25)};
}

std::vector<StateVector> constant_points(std::size_t n, std::initializer_list<double> values) {
  std::vector<StateVector> out;
  for (double v : values) out.push_back(StateVector::constant(n, v));
  return out;
}

nlohmann::json knots_json(const PiecewiseLinear& f) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [x, y] : f.knots()) out.push_back({x, y});
  return out;
}

void require_nonnegative_support(const Marginal& m, const std::string& what) {
  if (m.support_lower() < 0.0) {
    throw ConfigError(what + " must be supported on [0, inf), but its support reaches " +
                      std::to_string(m.support_lower()));
  }
}

}  // namespace

TransitionModel make_ar1(const Matrix& A, ShockDistribution shocks) {
  const std::size_t n = A.size();
  if (n == 0) throw ConfigError("A must be a nonempty square matrix");
  double norm = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (A[i].size() != n) throw ConfigError("A must be square (row " + std::to_string(i) + ")");
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double a = A[i][j];
      if (!std::isfinite(a)) throw ConfigError("A[" + std::to_string(i) + "][" + std::to_string(j) + "] is not finite");
      if (a < 0.0) {
        throw ConfigError("A[" + std::to_string(i) + "][" + std::to_string(j) +
                          "] is negative; a negative coefficient makes w decreasing");
      }
      row += a;
    }
    norm = std::max(norm, row);
  }
  if (shocks.dimension() != n) {
    throw ConfigError("ar1 needs " + std::to_string(n) + " shock marginals, got " +
                      std::to_string(shocks.dimension()));
  }

  ModelMetadata meta;
  meta.family = "ar1";
  meta.params = {{"A", A}};
  meta.values["operator_norm_inf"] = norm;
  meta.flags["contraction_ok"] = norm < 1.0;
  if (norm >= 1.0) {
    std::ostringstream os;
    os.precision(17);
    os << "||A||_inf = " << norm << " >= 1: w(., v) is not a max-norm contraction";
    meta.warnings.push_back(os.str());
  }

  auto pair = quantile_pair(shocks);
  return TransitionModel(ModelSpec{
      .state_space = StateSpace::real(n),
      .shock_space = StateSpace::real(n),
      .shocks = std::move(shocks),
      .transition =
          [A](std::span<const double> x, std::span<const double> v, std::span<double> out) {
            for (std::size_t i = 0; i < A.size(); ++i) {
              double s = 0.0;
              for (std::size_t j = 0; j < A.size(); ++j) s += A[i][j] * x[j];
              out[i] = s + v[i];
            }
          },
      .metadata = std::move(meta),
      .lipschitz_bound = [norm](const ShockVector&) -> std::optional<double> { return norm; },
      .default_pair = std::move(pair),
      .default_test_points = constant_points(n, {-1.0, 1.0}),
  });
}

TransitionModel make_rca1(const PiecewiseLinear& f, Marginal y, Marginal z) {
  if (f.min_slope() < 0.0) throw ConfigError("f must be increasing (found a negative slope)");
  if (f.max_slope() > 1.0) throw ConfigError("f must be 1-Lipschitz (found a slope above 1)");
  if (f(0.0) < 0.0) throw ConfigError("f must map R_+ into R_+ (f(0) < 0)");
  require_nonnegative_support(y, "Y");
  require_nonnegative_support(z, "Z");

  const double mean_y = y.mean();
  ModelMetadata meta;
  meta.family = "rca1";
  meta.params = {{"f", {{"type", "piecewise_linear"}, {"knots", knots_json(f)}}}};
  meta.values["mean_Y"] = mean_y;
  meta.values["lipschitz_f"] = f.max_slope();
  meta.flags["tightness_heuristic"] = mean_y < 1.0;
  if (!(mean_y < 1.0)) {
    meta.warnings.push_back("E[Y] = " + std::to_string(mean_y) +
                            " >= 1: the tightness heuristic E[Y] < 1 does not hold");
  }

  ShockDistribution shocks({std::move(y), std::move(z)});
  auto pair = quantile_pair(shocks);
  const double lip_f = f.max_slope();
  return TransitionModel(ModelSpec{
      .state_space = StateSpace::nonnegative(1),
      .shock_space = StateSpace::nonnegative(2),
      .shocks = std::move(shocks),
      .transition =
          [f](std::span<const double> x, std::span<const double> v, std::span<double> out) {
            out[0] = v[0] * f(x[0]) + v[1];
          },
      .metadata = std::move(meta),
      .lipschitz_bound = [lip_f](const ShockVector& v) -> std::optional<double> {
        return v[0] * lip_f;
      },
      .default_pair = std::move(pair),
      .default_test_points = constant_points(1, {0.0, 10.0}),
  });
}

TransitionModel make_portfolio(const PiecewiseLinear& g1, const PiecewiseLinear& g2, Marginal r1,
                               Marginal r2, Marginal z, BudgetGrid grid) {
  if (g1.min_slope() < 0.0 || g2.min_slope() < 0.0) {
    throw ConfigError("g1 and g2 must be increasing");
  }
  if (g1(0.0) < 0.0 || g2(0.0) < 0.0) throw ConfigError("g1 and g2 must be nonnegative");
  if (!(grid.max > 0.0) || !std::isfinite(grid.max) || grid.points < 2) {
    throw ConfigError("budget grid needs max > 0 and at least two points");
  }
  for (std::size_t j = 0; j < grid.points; ++j) {
    const double x = grid.max * static_cast<double>(j) / static_cast<double>(grid.points - 1);
    const double spent = g1(x) + g2(x);
    if (spent > x + 1e-12 * std::max(1.0, x)) {
      std::ostringstream os;
      os.precision(17);
      os << "budget violated: g1(x) + g2(x) = " << spent << " > x = " << x;
      throw ConfigError(os.str());
    }
  }
  for (const auto* r : {&r1, &r2}) {
    if (!(r->support_lower() > -1.0)) {
      throw ConfigError("asset returns must be supported in (-1, inf)");
    }
  }

  ModelMetadata meta;
  meta.family = "portfolio";
  meta.params = {{"g1", {{"type", "piecewise_linear"}, {"knots", knots_json(g1)}}},
                 {"g2", {{"type", "piecewise_linear"}, {"knots", knots_json(g2)}}},
                 {"budget_grid", {{"max", grid.max}, {"points", grid.points}}}};

  ShockDistribution shocks({std::move(r1), std::move(r2), std::move(z)});
  auto pair = quantile_pair(shocks);
  const double s1 = g1.max_slope();
  const double s2 = g2.max_slope();
  return TransitionModel(ModelSpec{
      .state_space = StateSpace::nonnegative(1),
      .shock_space = StateSpace({Interval::above(-1.0), Interval::above(-1.0), Interval::real_line()}),
      .shocks = std::move(shocks),
      .transition =
          [g1, g2](std::span<const double> x, std::span<const double> v, std::span<double> out) {
            const double wealth = (1.0 + v[0]) * g1(x[0]) + (1.0 + v[1]) * g2(x[0]) + v[2];
            out[0] = std::max(wealth, 0.0);
          },
      .metadata = std::move(meta),
      .lipschitz_bound = [s1, s2](const ShockVector& v) -> std::optional<double> {
        return (1.0 + v[0]) * s1 + (1.0 + v[1]) * s2;
      },
      .default_pair = std::move(pair),
      .default_test_points = constant_points(1, {0.0, 10.0}),
  });
}

TransitionModel make_resource(const Tensor3& c, const Tensor3& d, ShockDistribution shocks) {
  const std::size_t n = c.size();
  if (n == 0) throw ConfigError("c must have at least one resource");
  if (d.size() != n) throw ConfigError("c and d must have the same shape");
  const std::size_t firms = c[0].size();
  if (firms == 0) throw ConfigError("c must have at least one firm");
  auto check = [](double value, const std::string& where) {
    if (!(value > 0.0 && value < 1.0)) {
      throw ConfigError(where + " = " + std::to_string(value) + " must lie strictly inside (0, 1)");
    }
  };
  for (std::size_t i = 0; i < n; ++i) {
    if (c[i].size() != firms || d[i].size() != firms) {
      throw ConfigError("c and d must be n x k x n with the same k for every resource");
    }
    for (std::size_t j = 0; j < firms; ++j) {
      if (c[i][j].size() != n || d[i][j].size() != n) {
        throw ConfigError("c and d must be n x k x n with the same k for every resource");
      }
      for (std::size_t l = 0; l < n; ++l) {
        const std::string idx =
            "[" + std::to_string(i) + "][" + std::to_string(j) + "][" + std::to_string(l) + "]";
        check(c[i][j][l], "c" + idx);
        check(d[i][j][l], "d" + idx);
      }
    }
  }
  if (shocks.dimension() != n) {
    throw ConfigError("resource needs " + std::to_string(n) + " shock marginals, got " +
                      std::to_string(shocks.dimension()));
  }
  for (std::size_t i = 0; i < n; ++i) {
    require_nonnegative_support(shocks.marginal(i), "shock " + std::to_string(i));
  }

  ModelMetadata meta;
  meta.family = "resource";
  meta.params = {{"c", c}, {"d", d}};

  auto pair = quantile_pair(shocks);
  return TransitionModel(ModelSpec{
      .state_space = StateSpace::nonnegative(n),
      .shock_space = StateSpace::nonnegative(n),
      .shocks = std::move(shocks),
      .transition =
          [c, d](std::span<const double> x, std::span<const double> v, std::span<double> out) {
            for (std::size_t i = 0; i < c.size(); ++i) {
              double s = 0.0;
              for (std::size_t j = 0; j < c[i].size(); ++j) {
                for (std::size_t l = 0; l < c[i][j].size(); ++l) {
                  s += c[i][j][l] * std::pow(x[l], d[i][j][l]);
                }
              }
              out[i] = s + v[i];
            }
          },
      .metadata = std::move(meta),
      .lipschitz_bound = {},
      .default_pair = std::move(pair),
      .default_test_points = constant_points(n, {0.0, 10.0}),
  });
}

TransitionModel make_piecewise_exp(const PiecewiseExpParams& p, Marginal shock) {
  if (!(p.delta > -1.0) || !std::isfinite(p.delta)) throw ConfigError("delta must be > -1");
  if (!(p.c > 0.0) || !std::isfinite(p.c)) throw ConfigError("c must be > 0");
  if (!(p.alpha > 0.0) || !std::isfinite(p.alpha)) throw ConfigError("alpha must be > 0");
  if (!(p.beta > 0.0) || !std::isfinite(p.beta)) throw ConfigError("beta must be > 0");
  const double lo = shock.support_lower();
  const double hi = shock.support_upper();
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < 0.0) || !(hi > 0.0)) {
    throw ConfigError("shock must be supported on a bounded [a, b] with a < 0 < b");
  }

  const double joint = std::exp(p.c) + p.delta;
  const double gamma = joint - p.alpha * std::sqrt(p.beta);
  const double alpha = p.alpha;
  const double beta = p.beta;
  const double c = p.c;
  const double delta = p.delta;
  auto f = [=](double x) {
    return x <= c ? std::exp(x) + delta : alpha * std::sqrt(x - c + beta) + gamma;
  };
  auto concave_branch = [=](double x) { return alpha * std::sqrt(x - c + beta) + gamma; };

  const double gap = std::abs(joint - concave_branch(c));
  if (gap > 1e-9) {
    throw ConfigError("f is discontinuous at c (gap " + std::to_string(gap) + ")");
  }

  double v_hi = shock.quantile(0.75);
  if (!(v_hi > 0.0)) v_hi = 0.5 * hi;

  double b_c = Interval::kInf;
  for (double step = 1.0; c + step <= p.b_search_cap; step *= 2.0) {
    if (concave_branch(c + step) <= c + step - v_hi) {
      b_c = c + step;
      break;
    }
  }
  if (!std::isfinite(b_c)) {
    throw ConfigError("no b_c with g(b_c) <= b_c - v' found below the search cap " +
                      std::to_string(p.b_search_cap));
  }

  ModelMetadata meta;
  meta.family = "piecewise_exp";
  meta.params = {{"delta", p.delta}, {"c", p.c},         {"alpha", p.alpha},
                 {"beta", p.beta},   {"b_search_cap", p.b_search_cap}};
  meta.values["gamma"] = gamma;
  meta.values["b_c"] = b_c;
  meta.values["continuity_gap"] = gap;

  ShockDistribution shocks({std::move(shock)});
  return TransitionModel(ModelSpec{
      .state_space = StateSpace::real(1),
      .shock_space = StateSpace::real(1),
      .shocks = std::move(shocks),
      .transition = [f](std::span<const double> x, std::span<const double> v,
                        std::span<double> out) { out[0] = f(x[0]) + v[0]; },
      .metadata = std::move(meta),
      .lipschitz_bound = {},
      .default_pair = ShockPair{ShockVector{v_hi}, ShockVector{0.0}},
      .default_test_points = constant_points(1, {-1.0, 3.0}),
  });
}

const std::vector<FamilyInfo>& builtin_families() {
  static const std::vector<FamilyInfo> families = {
      {"ar1", "Linear autoregressive process X' = A X + V.", "R^n",
       "n marginals, one per coordinate of V",
       R"({"A": [[a11, ..., a1n], ..., [an1, ..., ann]]}  (all entries >= 0))",
       "Records ||A||_inf (max row sum). contraction_ok = ||A||_inf < 1; an expanding A is "
       "accepted with a warning and fails the contraction route."},
      {"rca1", "Positive autoregression with random coefficient X' = Y f(X) + Z.", "[0, inf)",
       "2 marginals: Y then Z, both supported on [0, inf)",
       R"({"f": {"type": "identity"} | {"type": "linear", "slope": s} | {"type": "piecewise_linear", "knots": [[x0, y0], ...]}})",
       "f must be increasing with slopes in [0, 1]. Records E[Y]; tightness_heuristic = E[Y] < 1."},
      {"portfolio", "Two-asset wealth process X' = max{(1+R1) g1(X) + (1+R2) g2(X) + Z, 0}.",
       "[0, inf)", "3 marginals: R1, R2 (supported in (-1, inf)) then Z",
       R"({"g1": <increasing map>, "g2": <increasing map>, "budget_grid": {"max": 100, "points": 1000}})",
       "g1 + g2 <= x is checked on the budget grid. The clamp at 0 is applied exactly."},
      {"resource", "Resource dynamics w_i(x, v) = sum_j sum_l c_ijl x_l^d_ijl + v_i.", "R^n_+",
       "n marginals, supported on [0, inf)",
       R"({"c": [[[c_ijl]]], "d": [[[d_ijl]]]}  (shape n x k x n, entries in (0, 1)))",
       "Each w_i is increasing and strictly concave; suited to the concave route."},
      {"piecewise_exp",
       "w(x, v) = f(x) + v with f = exp(x) + delta below c and alpha sqrt(x - c + beta) + gamma "
       "above.",
       "R", "1 marginal supported on a bounded [a, b] with a < 0 < b",
       R"({"delta": -0.9, "c": 1, "alpha": 1, "beta": 1, "b_search_cap": 1e6})",
       "gamma is solved for continuity at c. Default pair v'' = 0, v' = 0.75-quantile; suited to "
       "the direct route."},
  };
  return families;
}

const FamilyInfo& family_info(const std::string& name) {
  for (const auto& f : builtin_families()) {
    if (f.name == name) return f;
  }
  throw ConfigError("unknown model family '" + name +
                    "' (expected ar1, rca1, portfolio, resource or piecewise_exp)");
}

}  // namespace monostab
