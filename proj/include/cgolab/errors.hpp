#pragma once

#include <stdexcept>
#include <string>

namespace cgolab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid grid, field shape mismatch, bad index, etc.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// The quadratic phase is not resolvable on the grid for the requested tau.
class NyquistViolation : public Error {
 public:
  using Error::Error;
};

/// A test potential reaches outside the support box.
class SupportViolation : public Error {
 public:
  using Error::Error;
};

/// The fixed-point map failed to contract (tau below the contraction threshold).
class NoContraction : public Error {
 public:
  using Error::Error;
};

class MaxIterations : public Error {
 public:
  using Error::Error;
};

/// The discrete Dirichlet operator is (numerically) singular: zero is a
/// Dirichlet eigenvalue of the magnetic Hamiltonian on the grid.
class EigenvalueCollision : public Error {
 public:
  using Error::Error;
};

class SolverFailure : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace cgolab
