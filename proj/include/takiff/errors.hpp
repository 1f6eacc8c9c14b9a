#pragma once

#include <stdexcept>

namespace takiff {

/// Parameters outside a procedure's contract: wrong module kind, symbolic
/// values where rationals are required, a zero coefficient that must divide.
struct InvalidParams : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// The truncated realization is too shallow to apply the requested operator
/// exactly on the given vector.
struct TruncationTooShallow : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A would-be central operator failed to act by one scalar on the probed
/// interior vectors.
struct NotScalar : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A bounded witness scan finished without finding one.
struct WitnessNotFound : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// An iterative probe ran out of its step budget before finishing.
struct BudgetExhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The requested decision is outside the implemented fragment.
struct Unsupported : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Expression parsing failed; what() carries position and expectation.
struct SyntaxError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace takiff
