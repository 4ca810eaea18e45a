#pragma once

#include <stdexcept>
#include <string>

namespace isoflow {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller-supplied argument violates an operation's precondition
/// (non-positive step, zero leading coefficient, negative radius, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A body failed validation: degenerate or non-convex polygon, support
/// function without positive curvature.
class InvalidBody : public Error {
 public:
  using Error::Error;
};

/// Flow evaluated outside the interval (-delta, inf) on which the
/// neighborhood ratio extends smoothly.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A numerical cross-check disagreed beyond its tolerance.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

/// Malformed body or field JSON. The message carries line/field context.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace isoflow
