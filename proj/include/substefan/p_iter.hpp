#pragma once

#include "substefan/model.hpp"
#include "substefan/scheme.hpp"

namespace substefan {

/// Controls for the iterative front-coefficient search.
struct PIterConfig {
    double epsilon = 1e-3;    ///< convergence criterion |1 - p_est/p| < epsilon
    double bracket_lo = 0.1;
    double bracket_hi = 3.0;
    int max_iters = 60;       ///< bisection rounds after the endpoint evaluations

    void validate() const;
};

/// How the quadrature blend parameter is chosen for a scheme run.
struct PhiChoice {
    enum class Kind { network, fixed };
    Kind kind = Kind::network;
    double value = 1.0;  ///< used when kind == fixed

    static PhiChoice network() { return {Kind::network, 0.0}; }
    static PhiChoice fixed(double phi) { return {Kind::fixed, phi}; }
};

/// Layer-averaged front-coefficient estimator read off a populated grid:
///   p = mean_j sqrt(lambda Gamma(1-a/2) dc_j / (Gamma(1+a/2) du)),
/// with dc_j the backward difference of the recovered concentration at the
/// fixed boundary u = 1, clamped at zero before the square root. Throws
/// DegenerateGridError when every layer clamps.
double estimate_p_from_grid(const SolutionGrid& grid, double lambda);

/// Determine the front coefficient without the closed-form solution:
/// bisection on g(p) = estimate(march(p)) - p over the configured bracket,
/// terminating on the criterion |1 - estimate/p| < epsilon once the bracket
/// is resolved. Every scheme run is recorded in the returned trace.
FrontResult find_p(const ModelParams& params, int m, int n, PhiChoice phi,
                   const PIterConfig& cfg = {}, double tau0_factor = 1e-3);

}  // namespace substefan
