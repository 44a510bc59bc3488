#include "monostab/increasing_function.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "monostab/errors.hpp"

namespace monostab {

PiecewiseLinear::PiecewiseLinear(std::vector<std::pair<double, double>> knots)
    : knots_(std::move(knots)) {
  if (knots_.size() < 2) throw ConfigError("piecewise-linear map needs at least two knots");
  for (std::size_t i = 0; i < knots_.size(); ++i) {
    if (!std::isfinite(knots_[i].first) || !std::isfinite(knots_[i].second)) {
      throw ConfigError("piecewise-linear knot " + std::to_string(i) + " is not finite");
    }
    if (i > 0 && !(knots_[i].first > knots_[i - 1].first)) {
      throw ConfigError("piecewise-linear knots must have strictly increasing x");
    }
  }
  slopes_.reserve(knots_.size() - 1);
  for (std::size_t i = 1; i < knots_.size(); ++i) {
    slopes_.push_back((knots_[i].second - knots_[i - 1].second) /
                      (knots_[i].first - knots_[i - 1].first));
  }
}

double PiecewiseLinear::operator()(double x) const {
  // Segment i spans [knot i, knot i+1]; the end segments extend to +-inf.
  auto it = std::upper_bound(knots_.begin(), knots_.end(), x,
                             [](double v, const auto& k) { return v < k.first; });
  std::size_t seg = it == knots_.begin() ? 0 : static_cast<std::size_t>(it - knots_.begin()) - 1;
  seg = std::min(seg, slopes_.size() - 1);
  const auto& [x0, y0] = knots_[seg];
  return y0 + slopes_[seg] * (x - x0);
}

double PiecewiseLinear::min_slope() const { return *std::min_element(slopes_.begin(), slopes_.end()); }
double PiecewiseLinear::max_slope() const { return *std::max_element(slopes_.begin(), slopes_.end()); }

std::string PiecewiseLinear::describe() const {
  std::ostringstream os;
  os.precision(17);
  os << "piecewise_linear[";
  for (std::size_t i = 0; i < knots_.size(); ++i) {
    if (i) os << ", ";
    os << '(' << knots_[i].first << ", " << knots_[i].second << ')';
  }
  os << ']';
  return os.str();
}

}  // namespace monostab
