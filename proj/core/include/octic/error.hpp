#pragma once

#include <stdexcept>
#include <string>

namespace octic {

/// Base class for all mathematical precondition failures raised by the library.
class MathError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZero : public MathError {
 public:
  DivisionByZero() : MathError("division by zero") {}
};

/// Two field elements have no common field reachable by canonical embedding.
class FieldMismatch : public MathError {
 public:
  using MathError::MathError;
};

class ArityMismatch : public MathError {
 public:
  using MathError::MathError;
};

/// A polynomial division that was required to be exact left a remainder.
class InexactDivision : public MathError {
 public:
  using MathError::MathError;
};

}  // namespace octic
