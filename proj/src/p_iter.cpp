#include "substefan/p_iter.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "substefan/errors.hpp"
#include "substefan/phi_net.hpp"
#include "substefan/special.hpp"

namespace substefan {

void PIterConfig::validate() const {
    if (!(epsilon > 0.0)) throw std::invalid_argument("PIterConfig: epsilon must be positive");
    if (!(bracket_lo > 0.0) || !(bracket_hi > 0.0) || bracket_lo == bracket_hi) {
        throw std::invalid_argument("PIterConfig: bracket endpoints must be positive and distinct");
    }
    if (max_iters < 1) throw std::invalid_argument("PIterConfig: max_iters must be at least 1");
}

double estimate_p_from_grid(const SolutionGrid& grid, double lambda) {
    if (!(lambda > 0.0)) throw std::invalid_argument("estimate_p_from_grid: lambda must be positive");
    const int m = grid.mesh.m;
    const int n = grid.mesh.n;
    const double alpha = grid.alpha;
    const double factor = lambda * gamma_fn(1.0 - alpha / 2.0) /
                          (gamma_fn(1.0 + alpha / 2.0) * grid.mesh.delta_u);

    double sum = 0.0;
    bool any_positive = false;
    for (int j = 0; j <= n; ++j) {
        const double tau_alpha = std::pow(grid.mesh.tau(j), alpha);
        const double dc = (grid.cbar(m, j) - grid.cbar(m - 1, j)) * tau_alpha;
        if (dc > 0.0) {  // negative differences clamp to zero under the root
            sum += std::sqrt(factor * dc);
            any_positive = true;
        }
    }
    if (!any_positive) {
        throw DegenerateGridError("estimate_p_from_grid: every boundary difference clamped to zero");
    }
    return sum / (n + 1);
}

FrontResult find_p(const ModelParams& params, int m, int n, PhiChoice phi_choice,
                   const PIterConfig& cfg, double tau0_factor) {
    params.validate();
    cfg.validate();

    const double phi = phi_choice.kind == PhiChoice::Kind::network
                           ? predict_phi(1.0 / m, params.lambda, params.alpha)
                           : phi_choice.value;
    if (!(phi >= 0.0 && phi <= 1.0)) throw std::invalid_argument("find_p: phi must lie in [0, 1]");

    FrontResult result;
    result.method = FrontMethod::iterative;

    const auto estimator_image = [&](double p) {
        const MeshSpec mesh = build_mesh(m, n, p, params.alpha, tau0_factor);
        const SolutionGrid grid = march(params, mesh, p, phi);
        const double image = estimate_p_from_grid(grid, params.lambda);
        const double residual = std::abs(1.0 - image / p);
        result.trace.push_back({p, image, residual});
        ++result.iterations;
        return image;
    };

    double lo = std::min(cfg.bracket_lo, cfg.bracket_hi);
    double hi = std::max(cfg.bracket_lo, cfg.bracket_hi);

    const double image_lo = estimator_image(lo);
    const double image_hi = estimator_image(hi);
    if (!std::isfinite(image_lo) || !std::isfinite(image_hi)) {
        throw BracketError("find_p: estimator not finite at a bracket endpoint");
    }
    const double g_lo = image_lo - lo;
    const double g_hi = image_hi - hi;

    double best_p = std::numeric_limits<double>::quiet_NaN();
    double best_residual = std::numeric_limits<double>::infinity();
    const auto consider = [&](double p, double image) {
        const double residual = std::abs(1.0 - image / p);
        if (residual < best_residual) {
            best_residual = residual;
            best_p = p;
        }
    };
    consider(lo, image_lo);
    consider(hi, image_hi);

    if ((g_lo > 0.0) == (g_hi > 0.0)) {
        throw BracketError("find_p: no sign change of estimate(p) - p on the bracket [" +
                           std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }

    for (int it = 0; it < cfg.max_iters; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double image = estimator_image(mid);
        if (!std::isfinite(image)) {
            throw DegenerateGridError("find_p: estimator not finite at p = " + std::to_string(mid));
        }
        consider(mid, image);
        const double g_mid = image - mid;
        if ((g_mid > 0.0) == (g_lo > 0.0)) {
            lo = mid;
        } else {
            hi = mid;
        }
        // Stop once the criterion holds and the root is pinned well inside the
        // criterion's own scale, so the returned p is not bracket-limited.
        if (best_residual < cfg.epsilon && (hi - lo) <= 0.05 * cfg.epsilon * std::max(1.0, best_p)) {
            result.p = best_p;
            result.residual = best_residual;
            return result;
        }
    }
    throw ConvergenceError("find_p: criterion not met within " + std::to_string(cfg.max_iters) +
                           " bisection rounds (best residual " + std::to_string(best_residual) + ")");
}

}  // namespace substefan
