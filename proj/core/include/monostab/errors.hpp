#pragma once

#include <stdexcept>
#include <string>

namespace monostab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Vectors of different length were combined.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// An input or output left the declared state/shock space, or became non-finite.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A model configuration or constructor argument is invalid. `path()` names the
/// offending field (e.g. `$.params.A[0][1]`) when the error came from a file.
class ConfigError : public Error {
 public:
  ConfigError(std::string path, const std::string& message)
      : Error(path.empty() ? message : path + ": " + message),
        path_(std::move(path)) {}
  explicit ConfigError(const std::string& message) : ConfigError("", message) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

/// Fixed-point iteration hit its iteration limit without meeting tolerance.
class IterationLimitExceeded : public Error {
 public:
  using Error::Error;
};

/// A sequence that the order argument says is monotone was not.
class MonotonicityViolation : public Error {
 public:
  using Error::Error;
};

class NotOrdered : public Error {
 public:
  using Error::Error;
};

class ZeroTailMass : public Error {
 public:
  using Error::Error;
};

class DominanceViolation : public Error {
 public:
  using Error::Error;
};

class SearchCapExceeded : public Error {
 public:
  using Error::Error;
};

class FixedPointsNotSeparated : public Error {
 public:
  using Error::Error;
};

}  // namespace monostab
