#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

namespace substefan {

/// Physical parameters of a dissolution problem instance. Units:
/// d_alpha in cm^2 s^(-alpha), concentrations in any common unit, l in cm.
struct PhysicalParams {
    double d_alpha;  ///< generalized diffusivity
    double c0;       ///< initial (bulk) concentration, c0 > cs
    double cs;       ///< solubility at the dissolution front
    double l;        ///< slab thickness
};

/// Dimensionless problem instance: order of the time derivative and the
/// fractional Stefan number lambda = cs/c0. The physical block is optional
/// and only required for unit conversions.
struct ModelParams {
    double alpha;   ///< in (0, 1]
    double lambda;  ///< > 0
    std::optional<PhysicalParams> physical;

    void validate() const {
        if (!(alpha > 0.0 && alpha <= 1.0)) {
            throw std::invalid_argument("ModelParams: alpha must lie in (0, 1]");
        }
        if (!(lambda > 0.0)) {
            throw std::invalid_argument("ModelParams: lambda must be positive");
        }
        if (physical) {
            const auto& ph = *physical;
            if (!(ph.c0 > ph.cs && ph.cs > 0.0)) {
                throw std::invalid_argument("ModelParams: require c0 > cs > 0");
            }
            if (!(ph.l > 0.0) || !(ph.d_alpha > 0.0)) {
                throw std::invalid_argument("ModelParams: require l > 0 and d_alpha > 0");
            }
        }
    }
};

struct Dimensionless {
    double tau;
    double x;
    double c;
};

/// Scale a physical space-time-concentration point to dimensionless form:
/// tau = t (d_alpha / l^2)^(1/alpha), x = X / l, c = C / cs.
Dimensionless to_dimensionless(double t, double X, double C, const ModelParams& params);

enum class FrontMethod {
    transcendental,  ///< root of the closed-form front equation
    iterative,       ///< fixed point of the scheme's own front estimator
};

/// One evaluation of the iterative front solver: candidate coefficient,
/// its image under the grid estimator, and the convergence residual.
struct TraceEntry {
    double p;
    double phi_of_p;
    double residual;
};

/// Front coefficient of s(tau) = p tau^(alpha/2) together with solver
/// diagnostics. `trace` is populated by the iterative method only.
struct FrontResult {
    double p = 0.0;
    double residual = 0.0;
    FrontMethod method = FrontMethod::transcendental;
    int iterations = 0;
    std::vector<TraceEntry> trace;
};

}  // namespace substefan
