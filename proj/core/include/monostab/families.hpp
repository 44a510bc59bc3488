#pragma once

// Builtin monotone model families. Every constructor validates the
// structural assumptions that make w increasing and keep it inside S, and
// rejects parameters that would break them.

#include <cstddef>
#include <string>
#include <vector>

#include "monostab/increasing_function.hpp"
#include "monostab/model.hpp"

namespace monostab {

using Matrix = std::vector<std::vector<double>>;
/// Indexed [i][j][l]: resource i, firm j, input resource l.
using Tensor3 = std::vector<std::vector<std::vector<double>>>;

/// X' = A X + V on R^n, A entrywise nonnegative.
///
/// Metadata: `operator_norm_inf` = max row sum of A, and `contraction_ok`
/// = (||A||_inf < 1). An expanding A is accepted with a warning.
TransitionModel make_ar1(const Matrix& A, ShockDistribution shocks);

/// X' = Y f(X) + Z on R_+, V = (Y, Z) with Y, Z >= 0 and f increasing with
/// slopes in [0, 1] and f(0) >= 0.
///
/// Metadata: `mean_Y`, and `tightness_heuristic` = (E[Y] < 1).
TransitionModel make_rca1(const PiecewiseLinear& f, Marginal y, Marginal z);

/// Grid on which the portfolio budget constraint g1(x) + g2(x) <= x is checked.
struct BudgetGrid {
  double max = 100.0;
  std::size_t points = 1000;
};

/// X' = max{(1 + R1) g1(X) + (1 + R2) g2(X) + Z, 0} on [0, inf), V = (R1, R2, Z).
/// g1, g2 increasing and nonnegative with g1(x) + g2(x) <= x on the grid;
/// R1, R2 supported in (-1, inf).
TransitionModel make_portfolio(const PiecewiseLinear& g1, const PiecewiseLinear& g2, Marginal r1,
                               Marginal r2, Marginal z, BudgetGrid grid = {});

/// w_i(x, v) = sum_j sum_l c[i][j][l] * x_l^d[i][j][l] + v_i on R^n_+, all
/// coefficients and exponents strictly inside (0, 1), shocks nonnegative.
TransitionModel make_resource(const Tensor3& c, const Tensor3& d, ShockDistribution shocks);

struct PiecewiseExpParams {
  double delta = -0.9;
  double c = 1.0;
  /// Concave branch g(x) = alpha * sqrt(x - c + beta) + gamma for x > c, with
  /// gamma chosen so that g(c) = exp(c) + delta.
  double alpha = 1.0;
  double beta = 1.0;
  /// Largest b tried when searching for b_c with g(b_c) <= b_c - v'.
  double b_search_cap = 1e6;
};

/// w(x, v) = f(x) + v on R with f(x) = exp(x) + delta for x <= c and the
/// concave branch above c. The shock must be supported on [a, b], a < 0 < b.
/// Default pair: v'' = 0 and v' = the 0.75-quantile of the shock.
TransitionModel make_piecewise_exp(const PiecewiseExpParams& params, Marginal shock);

struct FamilyInfo {
  std::string name;
  std::string summary;
  std::string state_space;
  std::string shocks;
  std::string params;
  std::string notes;
};

const std::vector<FamilyInfo>& builtin_families();
/// Throws ConfigError for an unknown family name.
const FamilyInfo& family_info(const std::string& name);

}  // namespace monostab
