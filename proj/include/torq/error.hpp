#pragma once

#include <stdexcept>
#include <string>

namespace torq {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unknown names, malformed parameters, unreadable or malformed files.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A point (or finite-difference stencil point) left the chart domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A mathematical precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Singular systems, integrator failures.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace torq
