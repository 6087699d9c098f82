#pragma once

#include <Eigen/Dense>
#include <utility>

#include "substefan/model.hpp"

namespace substefan {

/// Rectangular space-time mesh on the front-fixed strip u in [0, 1].
/// Node times are tau_j = j * delta_tau for j >= 1; the initial layer sits at
/// the regularized time tau0 with 0 < tau0 << delta_tau.
struct MeshSpec {
    int m = 0;               ///< spatial intervals
    int n = 0;               ///< time intervals
    double delta_u = 0.0;    ///< 1/m
    double delta_tau = 0.0;  ///< tau_star/n
    double tau_star = 0.0;   ///< end time p^(-2/alpha)
    double tau0 = 0.0;       ///< regularized initial time

    double tau(int j) const { return j == 0 ? tau0 : j * delta_tau; }
};

/// Build the mesh for front coefficient p: the end time tau_star = p^(-2/alpha)
/// is when the front reaches the far edge of the slab.
MeshSpec build_mesh(int m, int n, double p, double alpha, double tau0_factor = 1e-3);

/// Auxiliary solution cbar(u_i, tau_j) = c(u_i, tau_j) tau_j^(-alpha) on the
/// fixed strip, with the parameters that produced it. Recovered values:
/// c = cbar tau^alpha, x = u p tau^(alpha/2).
struct SolutionGrid {
    Eigen::MatrixXd cbar;  ///< (m+1) x (n+1)
    MeshSpec mesh;
    double p = 0.0;
    double alpha = 0.0;
    double phi = 0.0;

    double concentration(int i, int j) const;
    double position(int i, int j) const;
};

/// Time-quadrature weight of the drift term, q_{i,j} = alpha i tau_j^(alpha-1) dtau / 4.
/// Valid for 1 <= i <= m-1 and 1 <= j <= n.
double weight_q(int i, int j, const MeshSpec& mesh, double alpha);

/// Product-trapezoid weight r_{j,k+1} of the memory integral, including the
/// prefactor 1/(p^2 Gamma(alpha) du^2). Valid for 0 <= j <= k+1, 0 <= k < n.
double weight_r(int j, int k, const MeshSpec& mesh, double alpha, double p);

/// Rectangle-rule weight w_{j,k+1} = dtau^alpha ((k+1-j)^alpha - (k-j)^alpha) / (p^2 Gamma(alpha+1)).
/// Valid for 0 <= j <= k, 0 <= k < n.
double weight_w(int j, int k, const MeshSpec& mesh, double alpha, double p);

/// Tridiagonal system in banded storage: lower/upper have size N-1, diag N.
struct Tridiagonal {
    Eigen::VectorXd lower;
    Eigen::VectorXd diag;
    Eigen::VectorXd upper;
};

/// Assemble the linear system advancing the grid from layer k to k+1.
/// Columns 0..k of grid.cbar and the boundary entries of column k+1 must be
/// populated. Returns the (m-1)x(m-1) tridiagonal matrix and right-hand side.
std::pair<Tridiagonal, Eigen::VectorXd> assemble_system(const SolutionGrid& grid, int k);

/// Thomas elimination without pivoting. Throws on a vanishing pivot.
Eigen::VectorXd solve_tridiagonal(const Tridiagonal& A, const Eigen::VectorXd& b);

/// Run the front-fixed finite-difference scheme over the whole mesh.
/// phi in [0, 1] is the trapezoidal-rule share of the blended memory
/// quadrature (phi = 1 reproduces the pure product-trapezoid scheme).
SolutionGrid march(const ModelParams& params, const MeshSpec& mesh, double p, double phi);

/// Physical-variable view of a solution grid.
struct PhysicalGrid {
    Eigen::MatrixXd x;  ///< positions x_{i,j} = u_i p tau_j^(alpha/2)
    Eigen::MatrixXd c;  ///< concentrations c_{i,j} = cbar_{i,j} tau_j^alpha
};

/// Apply both recovery formulas over the whole grid.
PhysicalGrid recover(const SolutionGrid& grid);

}  // namespace substefan
