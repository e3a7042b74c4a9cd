#pragma once

#include <stdexcept>
#include <string>

namespace gfc {

/// Malformed or out-of-contract input (CLI exit code 2).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A quaternionic-type real irreducible was found (CLI exit code 3).
class QuaternionicError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The requested computation exceeds a documented size bound (CLI exit code 4).
class InfeasibleError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// An internal algebraic identity failed to hold (d∘d ≠ 0, Jacobi, ...).
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline void require(bool condition, const std::string& message) {
  if (!condition) throw InputError(message);
}

inline void ensure(bool condition, const std::string& message) {
  if (!condition) throw InvariantViolation(message);
}

}  // namespace gfc
