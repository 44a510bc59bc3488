#pragma once

// Product partial order on R^n, order intervals and interval-product spaces.
//
// All order tests are exact floating-point comparisons. Tolerances belong to
// convergence checks, never to order semantics.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "monostab/errors.hpp"

namespace monostab {

namespace detail {
void require_finite(std::span<const double> coords, const char* what);
void require_same_size(std::size_t a, std::size_t b);
}  // namespace detail

/// A finite point of R^n. `Tag` separates state vectors from shock vectors so
/// the two cannot be mixed up at call sites.
template <class Tag>
class RealVector {
 public:
  explicit RealVector(std::vector<double> coords) : coords_(std::move(coords)) {
    if (coords_.empty()) throw DimensionMismatch("vector must have at least one coordinate");
    detail::require_finite(coords_, Tag::name);
  }
  RealVector(std::initializer_list<double> coords)
      : RealVector(std::vector<double>(coords)) {}

  /// Constant vector (value, ..., value) of length n.
  static RealVector constant(std::size_t n, double value) {
    return RealVector(std::vector<double>(n, value));
  }

  std::size_t size() const noexcept { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  std::span<const double> coords() const noexcept { return coords_; }
  const std::vector<double>& values() const noexcept { return coords_; }
  auto begin() const noexcept { return coords_.begin(); }
  auto end() const noexcept { return coords_.end(); }

  friend bool operator==(const RealVector&, const RealVector&) = default;

 private:
  std::vector<double> coords_;
};

struct StateTag {
  static constexpr const char* name = "state vector";
};
struct ShockTag {
  static constexpr const char* name = "shock vector";
};

using StateVector = RealVector<StateTag>;
using ShockVector = RealVector<ShockTag>;

/// x <= y in the product order.
template <class Tag>
bool leq(const RealVector<Tag>& x, const RealVector<Tag>& y) {
  detail::require_same_size(x.size(), y.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] <= y[i])) return false;
  }
  return true;
}

/// x < y: x <= y and x != y (at least one coordinate strictly smaller).
template <class Tag>
bool lt_strict(const RealVector<Tag>& x, const RealVector<Tag>& y) {
  return leq(x, y) && x != y;
}

/// Every coordinate of x strictly below the matching coordinate of y.
template <class Tag>
bool lt_all(const RealVector<Tag>& x, const RealVector<Tag>& y) {
  detail::require_same_size(x.size(), y.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] < y[i])) return false;
  }
  return true;
}

template <class Tag>
RealVector<Tag> pointwise_max(const RealVector<Tag>& x, const RealVector<Tag>& y) {
  detail::require_same_size(x.size(), y.size());
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = std::max(x[i], y[i]);
  return RealVector<Tag>(std::move(out));
}

template <class Tag>
RealVector<Tag> pointwise_min(const RealVector<Tag>& x, const RealVector<Tag>& y) {
  detail::require_same_size(x.size(), y.size());
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = std::min(x[i], y[i]);
  return RealVector<Tag>(std::move(out));
}

/// ||x - y||_inf
template <class Tag>
double max_norm_distance(const RealVector<Tag>& x, const RealVector<Tag>& y) {
  detail::require_same_size(x.size(), y.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) d = std::max(d, std::abs(x[i] - y[i]));
  return d;
}

template <class Tag>
double max_norm(const RealVector<Tag>& x) {
  double d = 0.0;
  for (double c : x) d = std::max(d, std::abs(c));
  return d;
}

std::string to_string(std::span<const double> coords);
template <class Tag>
std::string to_string(const RealVector<Tag>& x) {
  return to_string(x.coords());
}

/// One factor of an interval product. Infinite endpoints are always open.
class Interval {
 public:
  static constexpr double kInf = std::numeric_limits<double>::infinity();

  Interval(double lower, double upper, bool lower_closed, bool upper_closed);

  static Interval real_line() { return {-kInf, kInf, false, false}; }
  static Interval closed(double lo, double hi) { return {lo, hi, true, true}; }
  static Interval open(double lo, double hi) { return {lo, hi, false, false}; }
  /// [lo, +inf)
  static Interval at_least(double lo) { return {lo, kInf, true, false}; }
  /// (lo, +inf)
  static Interval above(double lo) { return {lo, kInf, false, false}; }

  double lower() const noexcept { return lower_; }
  double upper() const noexcept { return upper_; }
  bool lower_closed() const noexcept { return lower_closed_; }
  bool upper_closed() const noexcept { return upper_closed_; }

  bool contains(double x) const noexcept;
  bool has_least() const noexcept { return lower_closed_; }
  bool has_greatest() const noexcept { return upper_closed_; }

  std::string describe() const;

  friend bool operator==(const Interval&, const Interval&) = default;

 private:
  double lower_;
  double upper_;
  bool lower_closed_;
  bool upper_closed_;
};

/// S = I_1 x ... x I_n. Also used for the shock space E.
class StateSpace {
 public:
  explicit StateSpace(std::vector<Interval> dims);

  static StateSpace real(std::size_t n) {
    return StateSpace(std::vector<Interval>(n, Interval::real_line()));
  }
  static StateSpace nonnegative(std::size_t n) {
    return StateSpace(std::vector<Interval>(n, Interval::at_least(0.0)));
  }
  static StateSpace box(std::size_t n, double lo, double hi) {
    return StateSpace(std::vector<Interval>(n, Interval::closed(lo, hi)));
  }

  std::size_t dimension() const noexcept { return dims_.size(); }
  const Interval& operator[](std::size_t i) const { return dims_[i]; }
  const std::vector<Interval>& dims() const noexcept { return dims_; }

  bool contains(std::span<const double> x) const;
  template <class Tag>
  bool contains(const RealVector<Tag>& x) const {
    return contains(x.coords());
  }

  /// Least element (all lower endpoints closed), if any.
  std::optional<StateVector> least_element() const;
  /// Greatest element (all upper endpoints closed), if any.
  std::optional<StateVector> greatest_element() const;
  /// Compact in the order sense: has both a least and a greatest element.
  bool is_bounded() const { return least_element() && greatest_element(); }

  std::string describe() const;

  friend bool operator==(const StateSpace&, const StateSpace&) = default;

 private:
  std::vector<Interval> dims_;
};

using ShockSpace = StateSpace;

/// [low, high] = {x : low <= x <= high}.
class OrderInterval {
 public:
  OrderInterval(StateVector low, StateVector high);

  const StateVector& low() const noexcept { return low_; }
  const StateVector& high() const noexcept { return high_; }
  std::size_t dimension() const noexcept { return low_.size(); }

  bool contains(const StateVector& x) const { return leq(low_, x) && leq(x, high_); }
  /// low_i < high_i in every coordinate.
  bool is_nondegenerate() const { return lt_all(low_, high_); }

 private:
  StateVector low_;
  StateVector high_;
};

}  // namespace monostab
