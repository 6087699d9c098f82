#pragma once

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "substefan/errors.hpp"

namespace substefan {

/// Options for the Wright series summation. The defaults stop once three
/// consecutive terms fall below rel_tol relative to the partial sum, which
/// guards against premature termination on alternating series.
struct WrightSeriesOptions {
    double rel_tol = 1e-16;
    int consecutive_small = 3;
    int max_terms = 1000;
};

namespace detail {

template <typename Scalar>
bool is_nonpositive_integer(Scalar x) {
    return x <= Scalar(0) && x == std::floor(x);
}

}  // namespace detail

/// Euler gamma function on the real line. Throws std::domain_error at the
/// poles x = 0, -1, -2, ...
template <typename Scalar = double>
Scalar gamma_fn(Scalar x) {
    if (detail::is_nonpositive_integer(x)) {
        throw std::domain_error("gamma_fn: pole at non-positive integer argument " +
                                std::to_string(static_cast<double>(x)));
    }
    return std::tgamma(x);
}

/// Reciprocal gamma 1/Gamma(x), treated as an entire function: it vanishes at
/// the poles of Gamma instead of raising, which is what series over gamma
/// arguments stepping through non-positive integers need.
template <typename Scalar = double>
Scalar reciprocal_gamma(Scalar x) {
    if (detail::is_nonpositive_integer(x)) return Scalar(0);
    Scalar g = std::tgamma(x);
    return Scalar(1) / g;
}

/// Two-parameter Wright function W(z; gamma, delta) = sum_k z^k / (k! Gamma(gamma k + delta)),
/// summed until the stopping rule in `opts` fires. Requires gamma > -1.
template <typename Scalar = double>
Scalar wright(Scalar z, Scalar gamma, Scalar delta, const WrightSeriesOptions& opts = {}) {
    if (!(gamma > Scalar(-1))) {
        throw std::domain_error("wright: first parameter must exceed -1");
    }
    Scalar sum(0);
    Scalar pow_term(1);  // z^k / k!
    int small_run = 0;
    for (int k = 0; k < opts.max_terms; ++k) {
        const Scalar rg = reciprocal_gamma(gamma * Scalar(k) + delta);
        if (!std::isfinite(rg)) {
            throw ConvergenceError("wright: reciprocal gamma overflowed before convergence");
        }
        const Scalar term = pow_term * rg;
        sum += term;
        const Scalar scale = std::max(Scalar(1), std::abs(sum));
        if (std::abs(term) < Scalar(opts.rel_tol) * scale) {
            if (++small_run >= opts.consecutive_small) return sum;
        } else {
            small_run = 0;
        }
        pow_term *= z / Scalar(k + 1);
    }
    throw ConvergenceError("wright: series did not converge within " +
                           std::to_string(opts.max_terms) + " terms");
}

}  // namespace substefan
