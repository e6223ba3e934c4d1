#pragma once

#include <stdexcept>
#include <string>

namespace qqstab {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed arguments: dimension mismatch, out-of-range parameters,
/// unknown enumerators.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A sample function failed to produce a value.
class EvaluationError : public Error {
 public:
  using Error::Error;
};

/// An operation was called with inputs that violate its precondition
/// (e.g. homogeneity of an unconverged approximant).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// The control function is outside the exponent regime in which the
/// requested series or closed form converges.
class RegimeError : public Error {
 public:
  using Error::Error;
};

}  // namespace qqstab
