#ifndef MVBU_ERROR_HPP
#define MVBU_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mvbu {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed inputs to the math layer (bad distributions, shape mismatches).
class DomainError : public Error {
 public:
  using Error::Error;
};

class InvalidDistribution : public DomainError {
 public:
  using DomainError::DomainError;
};

class DimensionMismatch : public DomainError {
 public:
  DimensionMismatch(const std::string& what, std::ptrdiff_t expected, std::ptrdiff_t actual)
      : DomainError(what + ": expected " + std::to_string(expected) + " states, got " +
                    std::to_string(actual)) {}
};

class InvalidParameter : public DomainError {
 public:
  using DomainError::DomainError;
};

// Failures while computing an update or running an experiment.
class SolverError : public Error {
 public:
  using Error::Error;
};

class SupportViolation : public SolverError {
 public:
  using SolverError::SolverError;
};

class ZeroEvidence : public SolverError {
 public:
  using SolverError::SolverError;
};

class LambdaNonPositive : public SolverError {
 public:
  explicit LambdaNonPositive(double lambda)
      : SolverError("lambda must be > 0 for this solver (got " + std::to_string(lambda) +
                    "); use limit_update for lambda = 0") {}
};

class DegenerateProblem : public SolverError {
 public:
  using SolverError::SolverError;
};

class UnsupportedDimension : public SolverError {
 public:
  using SolverError::SolverError;
};

class EmptyMenu : public SolverError {
 public:
  EmptyMenu() : SolverError("evidence menu is empty") {}
};

// Configuration and front-end failures.
class ConfigError : public Error {
 public:
  using Error::Error;
};

class ParseError : public ConfigError {
 public:
  ParseError(std::size_t position, const std::string& message)
      : ConfigError("parse error at byte " + std::to_string(position) + ": " + message),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class ValidationError : public ConfigError {
 public:
  ValidationError(std::string field, const std::string& message)
      : ConfigError("invalid field '" + field + "': " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

class AxisMismatch : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace mvbu

#endif  // MVBU_ERROR_HPP
