#pragma once

#include <stdexcept>
#include <string>

namespace gptlab {

/// Operand sizes disagree (vector lengths, matrix shapes, spatial dimension n).
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Argument is well-formed but outside the operation's domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A condition that valid inputs can never produce (e.g. an infeasible LP
/// built from a valid theory).
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace gptlab
