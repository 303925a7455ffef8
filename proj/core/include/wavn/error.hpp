#pragma once

#include <stdexcept>
#include <string>

namespace wavn {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A configuration value violates its invariant. `field()` names the offending field.
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& message)
      : Error(field + ": " + message), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Stake weights were requested from a table whose stakes sum to zero.
class DegenerateStakesError : public Error {
 public:
  using Error::Error;
};

class IndexError : public Error {
 public:
  using Error::Error;
};

/// A robot pair (i, j) with i == j, or with a member outside the team.
class InvalidPairError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Averages over off-diagonal entries need at least two robots.
class UndefinedAverageError : public Error {
 public:
  using Error::Error;
};

/// Malformed block or transaction, or a broken append precondition.
class LedgerError : public Error {
 public:
  using Error::Error;
};

}  // namespace wavn
