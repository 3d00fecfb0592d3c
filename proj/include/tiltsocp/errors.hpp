#pragma once

#include <stdexcept>
#include <string>

namespace tiltsocp {

/// Malformed instance document (missing keys, wrong types, bad lengths).
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Well-formed instance whose data violate a standing assumption.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A reduced quadratic that must be positive semidefinite is not.
class NumericalIndefiniteness : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The directional argmax over the multiplier set does not exist.
class UnboundedMultiplierSet : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The normalizing denominator of the out-of-kernel multiplier vanishes.
class DegenerateScaling : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A cone operation was called outside of its domain.
class ConeDomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Feasibility restoration could not reach the constraint set.
class NoFeasiblePoint : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace tiltsocp
