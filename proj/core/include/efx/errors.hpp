#pragma once

#include <stdexcept>
#include <string>

namespace efx {

// Base for every error the library raises. Callers that only care about
// "something went wrong" can catch this; the CLI maps the concrete types
// onto distinct exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or out-of-range input (bad index, inconsistent allocation,
// unparsable rational, epsilon outside (0, 1/2]).
class InvalidInputError : public Error {
 public:
  using Error::Error;
};

// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// An invariant guaranteed by the theory failed at runtime. Always a bug or a
// lying precondition upstream, never a user error.
class InternalInvariantError : public Error {
 public:
  using Error::Error;
};

// An exhaustive search would exceed the caller-supplied budget.
class ResourceLimitError : public Error {
 public:
  using Error::Error;
};

// The input is well formed but outside what the operation supports.
class UnsupportedInputError : public Error {
 public:
  using Error::Error;
};

}  // namespace efx
