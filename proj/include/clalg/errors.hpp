#pragma once

#include <stdexcept>
#include <string>

namespace clalg {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed construction data (non-prime modulus, non-homogeneous input, ...).
class ConstructionError : public Error {
 public:
  using Error::Error;
};

/// Operands that live in different ambient modules or rings.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A Groebner run exceeded its S-pair budget, or an exponent overflowed.
class ResourceError : public Error {
 public:
  using Error::Error;
};

}  // namespace clalg
