#pragma once

#include <stdexcept>
#include <string>

namespace chaoslab {

/// Mathematically invalid input, e.g. a zero wavevector passed where a mode
/// index is required.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An iterative method failed, a solver did not converge, or a trajectory
/// left the finite numbers.
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace chaoslab
