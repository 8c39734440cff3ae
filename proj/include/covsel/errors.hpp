#pragma once

#include <stdexcept>
#include <string>

namespace covsel {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A matrix that must be positive definite is not (factorization failed).
class NotPositiveDefinite : public Error {
 public:
  using Error::Error;
};

class InvalidBounds : public Error {
 public:
  using Error::Error;
};

class InfiniteBounds : public Error {
 public:
  using Error::Error;
};

class NonFiniteInput : public Error {
 public:
  using Error::Error;
};

class AsymmetricInput : public Error {
 public:
  using Error::Error;
};

/// Dual point violates ‖Σ̂ − Σ‖∞ ≤ ρ beyond tolerance.
class InfeasibleDualPoint : public Error {
 public:
  using Error::Error;
};

/// ρ = 0 where a finite a-priori bound is required.
class DegeneratePenalty : public Error {
 public:
  using Error::Error;
};

/// Iterative numerical routine failed to converge.
class NumericalFailure : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Malformed input file; message names the file and line.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace covsel
