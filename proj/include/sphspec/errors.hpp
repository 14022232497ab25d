#pragma once

#include <stdexcept>
#include <string>

namespace sphspec {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input shape, e.g. a weight of the wrong length.
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// Input outside the domain of an operation (non-dominant weight,
/// label out of range, unsupported bundle/operator combination).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A transition quotient or Gamma ratio hit a zero denominator.
class PoleError : public Error {
 public:
  using Error::Error;
};

/// Broken internal invariant (inconsistent lattice loop, disconnected label).
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace sphspec
