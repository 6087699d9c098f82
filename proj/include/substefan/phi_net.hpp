#pragma once

#include <Eigen/Dense>
#include <string>

#include "substefan/model.hpp"
#include "substefan/scheme.hpp"

namespace substefan {

/// Fixed weights of the four-layer feed-forward predictor of the quadrature
/// blend parameter. Layout: inputs [du, lambda, alpha, 1] as a row vector are
/// multiplied on the right, so the last row of each matrix is the bias row.
struct PhiNetWeights {
    Eigen::Matrix<double, 4, 5> w1;
    Eigen::Matrix<double, 6, 5> w2;
    Eigen::Matrix<double, 6, 1> w3;

    /// The trained weights shipped with the library.
    static const PhiNetWeights& trained();
};

/// Elementwise hyperbolic tangent.
template <typename Derived>
auto act_tanh(const Eigen::MatrixBase<Derived>& v) {
    return v.array().tanh().matrix().eval();
}

/// Elementwise logistic sigmoid 1/(1+exp(-x)).
template <typename Derived>
auto act_sig(const Eigen::MatrixBase<Derived>& v) {
    return (1.0 / (1.0 + (-v.array()).exp())).matrix().eval();
}

/// Append the constant bias entry 1 to a row vector.
Eigen::RowVectorXd append_bias(const Eigen::RowVectorXd& v);

/// Forward pass of the blend predictor; the terminal sigmoid keeps the
/// output strictly inside (0, 1).
double predict_phi(double delta_u, double lambda, double alpha,
                   const PhiNetWeights& weights = PhiNetWeights::trained());

/// Weight matrices as a JSON document with three named row-major arrays
/// ("W1", "W2", "W3"), serialized so that a reparse is bit-exact.
std::string weights_json(const PhiNetWeights& weights = PhiNetWeights::trained());

/// Sum of the absolute node-wise deviations between a scheme run at blend phi
/// and the closed-form solution, both on the mesh implied by `mesh` and the
/// exact front coefficient `p_exact`.
double calibration_objective(const ModelParams& params, const MeshSpec& mesh, double p_exact,
                             double phi);

/// Minimize the calibration objective over phi in [0, 1]: a 0.01-step grid
/// scan selects the bracket (the objective need not be unimodal), then
/// golden-section search refines the minimizer to width `tol`.
double calibrate_phi(const ModelParams& params, const MeshSpec& mesh, double p_exact,
                     double tol = 1e-3);

}  // namespace substefan
