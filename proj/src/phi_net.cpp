#include "substefan/phi_net.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <json.hpp>

#include "substefan/analytic.hpp"

namespace substefan {

const PhiNetWeights& PhiNetWeights::trained() {
    static const PhiNetWeights weights = [] {
        PhiNetWeights w;
        w.w1 << 6.02145, 2.14126, 0.677927, -13.8801, 1.52535,
                -0.514316, 0.150222, -0.853299, 0.162208, -0.88522,
                0.80747, -7.26578, -0.0383236, -0.307713, -5.98303,
                -0.140854, 2.3685, 0.0361885, -0.284572, 5.68518;
        w.w2 << -7.18748, -2.4983, -0.72953, -1.40697, 0.748731,
                -8.66802, -2.94062, 0.0381687, -0.909638, 0.268698,
                -1.77908, 0.0049326, -4.28149, -0.264405, 0.382544,
                11.2767, 2.75494, -1.16368, -2.87708, -1.78879,
                -7.43406, -1.53303, -1.25246, -1.20859, 1.33437,
                -0.590041, -0.72953, 1.50501, -2.31013, -0.662821;
        w.w3 << 10.4966, 3.34645, 3.03464, 4.17581, -3.59841, -0.490178;
        return w;
    }();
    return weights;
}

Eigen::RowVectorXd append_bias(const Eigen::RowVectorXd& v) {
    Eigen::RowVectorXd out(v.size() + 1);
    if (v.size() > 0) out.head(v.size()) = v;
    out(v.size()) = 1.0;
    return out;
}

double predict_phi(double delta_u, double lambda, double alpha, const PhiNetWeights& weights) {
    if (!(delta_u > 0.0)) throw std::invalid_argument("predict_phi: delta_u must be positive");
    if (!(lambda > 0.0)) throw std::invalid_argument("predict_phi: lambda must be positive");
    if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("predict_phi: alpha in (0, 1]");

    Eigen::RowVector4d input(delta_u, lambda, alpha, 1.0);
    const Eigen::RowVectorXd hidden1 = act_tanh(input * weights.w1);
    const Eigen::RowVectorXd hidden2 = act_sig(append_bias(hidden1) * weights.w2);
    return act_sig(append_bias(hidden2) * weights.w3)(0);
}

namespace {

template <typename Matrix>
nlohmann::ordered_json matrix_rows(const Matrix& m) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

std::string weights_json(const PhiNetWeights& weights) {
    nlohmann::ordered_json doc;
    doc["W1"] = matrix_rows(weights.w1);
    doc["W2"] = matrix_rows(weights.w2);
    doc["W3"] = matrix_rows(weights.w3);
    return doc.dump(2) + "\n";
}

double calibration_objective(const ModelParams& params, const MeshSpec& mesh, double p_exact,
                             double phi) {
    const SolutionGrid grid = march(params, mesh, p_exact, phi);
    const int m = mesh.m;
    const int n = mesh.n;

    // The closed-form solution is self-similar: at every layer the node value
    // depends on u_i alone, so one profile evaluation per column suffices.
    std::vector<double> profile(m + 1);
    for (int i = 0; i <= m; ++i) {
        profile[i] = exact_concentration(i * mesh.delta_u * p_exact, 1.0, p_exact, params.alpha);
    }

    double total = 0.0;
    for (int j = 0; j <= n; ++j) {
        const double tau_alpha = std::pow(mesh.tau(j), params.alpha);
        for (int i = 0; i <= m; ++i) {
            total += std::abs(grid.cbar(i, j) * tau_alpha - profile[i]);
        }
    }
    return total;
}

double calibrate_phi(const ModelParams& params, const MeshSpec& mesh, double p_exact, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("calibrate_phi: tol must be positive");

    const auto objective = [&](double phi) {
        const double f = calibration_objective(params, mesh, p_exact, phi);
        return std::isfinite(f) ? f : std::numeric_limits<double>::infinity();
    };

    // Coarse scan picks the bracket; the objective can blow up for small phi
    // where the scheme loses stability, so non-finite values rank last.
    constexpr int kScanPoints = 101;
    int best_index = 0;
    double best_value = std::numeric_limits<double>::infinity();
    std::vector<double> scan(kScanPoints);
    for (int s = 0; s < kScanPoints; ++s) {
        scan[s] = objective(s / 100.0);
        if (scan[s] < best_value) {
            best_value = scan[s];
            best_index = s;
        }
    }

    double lo = std::max(0.0, (best_index - 1) / 100.0);
    double hi = std::min(1.0, (best_index + 1) / 100.0);

    // Golden-section refinement inside the scan bracket.
    const double inv_gold = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double x1 = b - inv_gold * (b - a);
    double x2 = a + inv_gold * (b - a);
    double f1 = objective(x1);
    double f2 = objective(x2);
    while (b - a > tol) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_gold * (b - a);
            f1 = objective(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_gold * (b - a);
            f2 = objective(x2);
        }
    }
    const double phi_star = 0.5 * (a + b);
    // Guard against a refinement step landing above the scan's best sample.
    return objective(phi_star) <= best_value ? phi_star : best_index / 100.0;
}

}  // namespace substefan
