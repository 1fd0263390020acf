#pragma once

#include <stdexcept>
#include <string>

namespace steklov {

// Base for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A precondition on an argument was violated.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A radius or coordinate fell outside the range where a surface, warp or
// radial profile is defined.
class DomainRangeError : public Error {
 public:
  using Error::Error;
};

// Integrator step underflow, non-finite values, indefinite Gram matrices and
// similar failures of a numerical kernel.
class NumericalError : public Error {
 public:
  using Error::Error;
};

// A bound formula was asked for an eigenvalue index or surface it does not
// cover, or its inputs were computed on a different surface.
class NotApplicable : public Error {
 public:
  using Error::Error;
};

}  // namespace steklov
