#pragma once

#include "substefan/model.hpp"

namespace substefan {

/// Residual of the front-coefficient equation in cross-multiplied form:
///   lambda Gamma(1-a/2) W(-p; -a/2, 1-a/2) - p Gamma(1+a/2) (1 - W(-p; -a/2, 1)).
/// Strictly positive as p -> 0+ and negative for large p, so a root bracket
/// always exists on (0, 6] for the parameter ranges handled here.
double transcendental_residual(double p, double alpha, double lambda);

/// Solve the transcendental front-coefficient equation with safeguarded
/// Newton iteration (central-difference derivative, bisection fallback on
/// the bracket [1e-6, 6]). Converged when |residual| < tol.
FrontResult solve_p_transcendental(const ModelParams& params, double tol = 1e-10);

/// Closed-form concentration at dimensionless position x and time tau > 0,
///   c(x, tau) = (1 - W(-x/tau^(a/2); -a/2, 1)) / (1 - W(-p; -a/2, 1)),
/// valid on 0 <= x <= s(tau) = p tau^(a/2).
double exact_concentration(double x, double tau, double p, double alpha);

/// Front position s(tau) = p tau^(alpha/2).
double exact_front(double tau, double p, double alpha);

}  // namespace substefan
