#pragma once

#include <stdexcept>

namespace gtlab {

/// Invalid argument values: bad dimensions, indexes out of range,
/// malformed input files.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Numeric-domain violations in the rate engine (argument outside the
/// interval a formula is defined on).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A configurable complexity cap was exceeded (edge explosion in the
/// decoder, subset budget in the code checker).
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gtlab
