#pragma once

#include <stdexcept>
#include <string>

namespace spingate {

/// Base class for every error raised by the simulator core.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A caller broke an operation's precondition (wrong dimension, too few samples, ...).
class ContractViolation : public Error {
public:
  using Error::Error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
  using Error::Error;
};

/// A parameter bundle or configuration failed validation. Carries the field name.
class ValidationError : public Error {
public:
  ValidationError(std::string field, const std::string& what)
      : Error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

private:
  std::string field_;
};

/// Malformed configuration text. Line numbers are 1-based; 0 means "not from a file".
class ParseError : public Error {
public:
  ParseError(std::size_t line, const std::string& what)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

/// The ODE integrator could not finish the requested span.
class IntegrationError : public Error {
public:
  IntegrationError(const std::string& what, double lastTime)
      : Error(what + " (last reached t = " + std::to_string(lastTime) + " us)"), lastTime_(lastTime) {}
  double lastTime() const noexcept { return lastTime_; }

private:
  double lastTime_;
};

/// find_threshold was called on an interval whose ends do not straddle the fidelity threshold.
class ThresholdNotBracketed : public Error {
public:
  using Error::Error;
};

class IoError : public Error {
public:
  using Error::Error;
};

}  // namespace spingate
