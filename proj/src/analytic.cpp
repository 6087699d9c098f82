#include "substefan/analytic.hpp"

#include <algorithm>
#include <cmath>

#include "substefan/errors.hpp"
#include "substefan/special.hpp"

namespace substefan {

double transcendental_residual(double p, double alpha, double lambda) {
    const double half = alpha / 2.0;
    const double w_shift = wright(-p, -half, 1.0 - half);
    const double w_base = wright(-p, -half, 1.0);
    return lambda * gamma_fn(1.0 - half) * w_shift - p * gamma_fn(1.0 + half) * (1.0 - w_base);
}

FrontResult solve_p_transcendental(const ModelParams& params, double tol) {
    params.validate();
    if (!(tol > 0.0)) throw std::invalid_argument("solve_p_transcendental: tol must be positive");

    double lo = 1e-6;
    double hi = 6.0;
    const double f_lo = transcendental_residual(lo, params.alpha, params.lambda);
    // The residual tends to +lambda as p -> 0+, so f_lo anchors the sign.
    double p = std::clamp(std::sqrt(2.0 * params.lambda), lo, hi);

    const int max_iters = 100;
    for (int it = 1; it <= max_iters; ++it) {
        const double f = transcendental_residual(p, params.alpha, params.lambda);
        if (std::abs(f) < tol) {
            return {p, std::abs(f), FrontMethod::transcendental, it, {}};
        }
        if ((f > 0.0) == (f_lo > 0.0)) {
            lo = p;
        } else {
            hi = p;
        }
        const double h = 1e-7 * std::max(1.0, p);
        const double df = (transcendental_residual(p + h, params.alpha, params.lambda) -
                           transcendental_residual(p - h, params.alpha, params.lambda)) /
                          (2.0 * h);
        double next = p - f / df;
        if (!std::isfinite(next) || next <= lo || next >= hi) {
            next = 0.5 * (lo + hi);  // Newton left the bracket; bisect instead
        }
        p = next;
    }
    throw ConvergenceError("solve_p_transcendental: no convergence within iteration budget");
}

double exact_concentration(double x, double tau, double p, double alpha) {
    if (!(tau > 0.0)) throw std::domain_error("exact_concentration: tau must be positive");
    if (!(p > 0.0)) throw std::domain_error("exact_concentration: p must be positive");
    const double s = exact_front(tau, p, alpha);
    const double slack = 1e-12 * std::max(1.0, s);
    if (x < -slack || x > s + slack) {
        throw std::domain_error("exact_concentration: x outside [0, s(tau)]");
    }
    const double z = std::clamp(x, 0.0, s) / std::pow(tau, alpha / 2.0);
    const double num = 1.0 - wright(-z, -alpha / 2.0, 1.0);
    const double den = 1.0 - wright(-p, -alpha / 2.0, 1.0);
    return num / den;
}

double exact_front(double tau, double p, double alpha) {
    if (tau < 0.0) throw std::domain_error("exact_front: tau must be non-negative");
    return p * std::pow(tau, alpha / 2.0);
}

}  // namespace substefan
