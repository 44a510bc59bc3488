#pragma once

#include <string>
#include <utility>
#include <vector>

namespace monostab {

/// Continuous piecewise-linear map R -> R through sorted knots, extended
/// linearly beyond the first and last knot with the end slopes.
class PiecewiseLinear {
 public:
  /// Knots are (x, y) pairs with strictly increasing x; at least two.
  explicit PiecewiseLinear(std::vector<std::pair<double, double>> knots);

  static PiecewiseLinear identity() { return PiecewiseLinear({{0.0, 0.0}, {1.0, 1.0}}); }
  static PiecewiseLinear linear(double slope, double intercept = 0.0) {
    return PiecewiseLinear({{0.0, intercept}, {1.0, intercept + slope}});
  }

  double operator()(double x) const;

  const std::vector<std::pair<double, double>>& knots() const noexcept { return knots_; }
  const std::vector<double>& slopes() const noexcept { return slopes_; }
  double min_slope() const;
  double max_slope() const;

  std::string describe() const;

 private:
  std::vector<std::pair<double, double>> knots_;
  std::vector<double> slopes_;
};

}  // namespace monostab
