#pragma once

#include <stdexcept>
#include <string>

namespace rgrad {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed user input: syntax errors, unknown names, invalid configuration.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A computation ran out of its step, size or depth allowance. Nothing may be
/// concluded from the partial work.
class BudgetExhausted : public Error {
 public:
  using Error::Error;
};

/// A caller broke a documented precondition.
class ContractError : public Error {
 public:
  using Error::Error;
};

/// An internal invariant failed. Always a bug.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace rgrad
