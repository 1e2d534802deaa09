#pragma once

#include <stdexcept>
#include <string>

namespace einwave {

/// Base class for every error raised by the verification engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the domain where an evaluator is defined.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Invalid parameters or run configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A second derivative was requested on the singular line x1 = t.
class SingularError : public Error {
 public:
  using Error::Error;
};

/// The Riccati profile left its safety bound inside the profile domain.
class ProfileBlowupError : public Error {
 public:
  using Error::Error;
};

/// A numerical procedure did not reach its requested accuracy.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Adaptive quadrature failed to meet its tolerance.
class QuadratureError : public ConvergenceError {
 public:
  using ConvergenceError::ConvergenceError;
};

/// The Riccati interpolant misses the ODE by more than the requested tolerance.
class OdeToleranceError : public ConvergenceError {
 public:
  using ConvergenceError::ConvergenceError;
};

/// A boundary point does not satisfy its defining equation.
class GeometryError : public Error {
 public:
  using Error::Error;
};

/// Input violates a documented precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A bound or sign condition checked at runtime does not hold.
class VerificationFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace einwave
