#pragma once

#include <stdexcept>
#include <string>

namespace galikit {

/// A matrix argument does not match the structural pattern a type requires
/// (group embedding rows, Lie algebra zero blocks, homogeneous tails).
struct StructureError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// An operation was evaluated at a point where it is undefined
/// (rotation logarithm at angle pi, gravity model inside its exclusion ball).
struct SingularityError : std::domain_error {
  using std::domain_error::domain_error;
};

/// A numerical procedure failed to produce a usable result
/// (non-finite integration state, indefinite information matrix).
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace galikit
