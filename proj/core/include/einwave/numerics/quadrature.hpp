#pragma once

#include <cstddef>
#include <functional>
#include <string>

namespace einwave::numerics {

/// Result of a single adaptive integration.
struct QuadratureOutcome {
  double value = 0.0;
  double error = 0.0;      // estimated absolute error
  bool converged = false;  // error <= max(abs_tol, rel_tol * |value|)
  std::size_t evaluations = 0;
  std::size_t intervals = 0;
};

struct QuadratureOptions {
  double abs_tol = 1e-300;
  double rel_tol = 1e-10;
  std::size_t max_intervals = 4000;
};

using Integrand = std::function<double(double)>;

/// Single 15-point Gauss-Kronrod panel on [a, b]; `err` receives |K15 - G7|
/// scaled as in QUADPACK.
double gauss_kronrod15(const Integrand& f, double a, double b, double& err);

/// Globally adaptive Gauss-Kronrod (bisect the panel with the largest error).
QuadratureOutcome integrate(const Integrand& f, double a, double b,
                            const QuadratureOptions& opts = {});

/// Integrates f over [a, b] with 0 < a < b after the substitution
/// s = exp(-w), which maps a log-type singularity at s = 0 onto a smooth,
/// slowly decaying integrand in w.
QuadratureOutcome integrate_log_left(const Integrand& f, double a, double b,
                                     const QuadratureOptions& opts = {});

/// Throws QuadratureError with `what` and the diagnostics when the outcome
/// did not converge; returns the value otherwise.
double require_converged(const QuadratureOutcome& out, const std::string& what);

}  // namespace einwave::numerics
