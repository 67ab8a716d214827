#pragma once

#include <stdexcept>
#include <string>

namespace fppdt {

/// Root of the library's exception hierarchy.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller-supplied parameter is outside its documented domain.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// An operation was invoked on input that violates its stated precondition
/// (for example a box circuit whose boxes are not all full).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// An exact-enumeration routine was asked for more than it is bounded to do.
class BoundExceeded : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// The computation itself failed (disconnected graph, degenerate geometry
/// that could not be resolved, empty statistics).
class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace fppdt
