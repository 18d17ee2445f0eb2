#pragma once

#include <stdexcept>
#include <string>

namespace holab {

// Base class for all library errors.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Operand shapes are incompatible (e.g. inner product of unequal sizes).
struct DimensionError : Error {
  using Error::Error;
};

// Input is outside the mathematical domain of the operation
// (non-skew matrix where skew-Hermitian is required, non-unit quaternion,
// loop point outside the chart, empty basis, ...).
struct DomainError : Error {
  using Error::Error;
};

// X^*X is not a positive scalar multiple of the identity.
struct NotUmnError : DomainError {
  using DomainError::DomainError;
};

// X^*X is scalar but the scalar is not positive (degenerate frame).
struct TrivialError : DomainError {
  using DomainError::DomainError;
};

// X^*Y is not a scalar multiple of the identity, so a pairing constant
// does not exist.
struct NotScalarError : DomainError {
  using DomainError::DomainError;
};

// The requested construction needs more room than the ambient dimensions
// provide (e.g. a counterexample frame requires 2n <= m).
struct DimensionObstructionError : DomainError {
  using DomainError::DomainError;
};

// A spanning set that must be linearly independent is numerically dependent.
struct DependentBasisError : DomainError {
  using DomainError::DomainError;
};

// A path handed to the transport integrator does not close up.
struct NonClosedLoopError : DomainError {
  using DomainError::DomainError;
};

// An iterative routine failed to reach its tolerance.
struct ConvergenceError : Error {
  using Error::Error;
};

// Malformed serialized input (JSON shape, loop spec string, ...).
struct ParseError : Error {
  using Error::Error;
};

}  // namespace holab
