#include "monostab/order.hpp"

#include <sstream>

namespace monostab {

namespace detail {

void require_finite(std::span<const double> coords, const char* what) {
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (!std::isfinite(coords[i])) {
      throw DomainError(std::string(what) + " has non-finite coordinate " + std::to_string(i));
    }
  }
}

void require_same_size(std::size_t a, std::size_t b) {
  if (a != b) {
    throw DimensionMismatch("dimension mismatch: " + std::to_string(a) + " vs " +
                            std::to_string(b));
  }
}

}  // namespace detail

std::string to_string(std::span<const double> coords) {
  std::ostringstream os;
  os.precision(17);
  os << '(';
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (i) os << ", ";
    os << coords[i];
  }
  os << ')';
  return os.str();
}

Interval::Interval(double lower, double upper, bool lower_closed, bool upper_closed)
    : lower_(lower), upper_(upper), lower_closed_(lower_closed), upper_closed_(upper_closed) {
  if (std::isnan(lower) || std::isnan(upper)) throw ConfigError("interval bound is NaN");
  if (lower == kInf || upper == -kInf) throw ConfigError("interval bound points the wrong way");
  if (!(lower < upper)) throw ConfigError("interval must be nondegenerate: lower < upper");
  if (std::isinf(lower) && lower_closed) throw ConfigError("infinite lower endpoint cannot be closed");
  if (std::isinf(upper) && upper_closed) throw ConfigError("infinite upper endpoint cannot be closed");
}

bool Interval::contains(double x) const noexcept {
  if (std::isnan(x)) return false;
  const bool above_lower = lower_closed_ ? x >= lower_ : x > lower_;
  const bool below_upper = upper_closed_ ? x <= upper_ : x < upper_;
  return above_lower && below_upper;
}

std::string Interval::describe() const {
  std::ostringstream os;
  os.precision(17);
  os << (lower_closed_ ? '[' : '(');
  if (std::isinf(lower_)) os << "-inf"; else os << lower_;
  os << ", ";
  if (std::isinf(upper_)) os << "+inf"; else os << upper_;
  os << (upper_closed_ ? ']' : ')');
  return os.str();
}

StateSpace::StateSpace(std::vector<Interval> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) throw ConfigError("state space needs at least one dimension");
}

bool StateSpace::contains(std::span<const double> x) const {
  detail::require_same_size(dims_.size(), x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!dims_[i].contains(x[i])) return false;
  }
  return true;
}

std::optional<StateVector> StateSpace::least_element() const {
  std::vector<double> out;
  out.reserve(dims_.size());
  for (const auto& d : dims_) {
    if (!d.has_least()) return std::nullopt;
    out.push_back(d.lower());
  }
  return StateVector(std::move(out));
}

std::optional<StateVector> StateSpace::greatest_element() const {
  std::vector<double> out;
  out.reserve(dims_.size());
  for (const auto& d : dims_) {
    if (!d.has_greatest()) return std::nullopt;
    out.push_back(d.upper());
  }
  return StateVector(std::move(out));
}

std::string StateSpace::describe() const {
  std::string out;
  for (std::size_t i = 0; i < dims_.size(); ++i) {
    if (i) out += " x ";
    out += dims_[i].describe();
  }
  return out;
}

OrderInterval::OrderInterval(StateVector low, StateVector high)
    : low_(std::move(low)), high_(std::move(high)) {
  if (!leq(low_, high_)) {
    throw DomainError("order interval requires low <= high, got " + to_string(low_) + " and " +
                      to_string(high_));
  }
}

}  // namespace monostab
