#pragma once

#include <stdexcept>
#include <string>

namespace srlb {

/// Inputs violate a documented precondition (dimension mismatch, bad model key, ...).
class InvalidInputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical evaluation left the representable/finite domain.
class NumericalDomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A simulated path produced a non-finite state.
class PathBlowupError : public NumericalDomainError {
 public:
  using NumericalDomainError::NumericalDomainError;
};

/// Requested simulation mode is not available for the given quotient kind.
class UnsupportedModeError : public InvalidInputError {
 public:
  using InvalidInputError::InvalidInputError;
};

/// Test function is degenerate on the given cloud (e.g. f^2 identically zero).
class DegenerateFunctionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Energy estimate is statistically indistinguishable from zero; no ratio.
class IndeterminateRatioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two clouds cannot be compared (different terminal times or models).
class InvalidComparisonError : public InvalidInputError {
 public:
  using InvalidInputError::InvalidInputError;
};

}  // namespace srlb
