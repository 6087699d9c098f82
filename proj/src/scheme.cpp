#include "substefan/scheme.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "substefan/errors.hpp"
#include "substefan/special.hpp"

namespace substefan {

MeshSpec build_mesh(int m, int n, double p, double alpha, double tau0_factor) {
    if (m < 2) throw std::invalid_argument("build_mesh: need at least 2 spatial intervals");
    if (n < 1) throw std::invalid_argument("build_mesh: need at least 1 time interval");
    if (!(p > 0.0)) throw std::invalid_argument("build_mesh: p must be positive");
    if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("build_mesh: alpha in (0, 1]");
    if (!(tau0_factor > 0.0 && tau0_factor < 1.0)) {
        throw std::invalid_argument("build_mesh: tau0_factor must lie in (0, 1)");
    }
    MeshSpec mesh;
    mesh.m = m;
    mesh.n = n;
    mesh.delta_u = 1.0 / m;
    mesh.tau_star = std::pow(p, -2.0 / alpha);
    mesh.delta_tau = mesh.tau_star / n;
    mesh.tau0 = tau0_factor * mesh.delta_tau;
    return mesh;
}

double SolutionGrid::concentration(int i, int j) const {
    return cbar(i, j) * std::pow(mesh.tau(j), alpha);
}

double SolutionGrid::position(int i, int j) const {
    return i * mesh.delta_u * p * std::pow(mesh.tau(j), alpha / 2.0);
}

double weight_q(int i, int j, const MeshSpec& mesh, double alpha) {
    if (i < 1 || i > mesh.m - 1) throw std::out_of_range("weight_q: spatial index");
    if (j < 1 || j > mesh.n) throw std::out_of_range("weight_q: time index");
    return alpha * i * std::pow(mesh.tau(j), alpha - 1.0) * mesh.delta_tau / 4.0;
}

double weight_r(int j, int k, const MeshSpec& mesh, double alpha, double p) {
    if (k < 0 || k >= mesh.n) throw std::out_of_range("weight_r: layer index");
    if (j < 0 || j > k + 1) throw std::out_of_range("weight_r: node index");
    const double du = mesh.delta_u;
    const double pref = 1.0 / (p * p * gamma_fn(alpha) * du * du);
    const double base = std::pow(mesh.delta_tau, alpha) / (alpha * (alpha + 1.0));
    if (j == 0) {
        return pref * base *
               (std::pow(k, alpha + 1.0) - (k - alpha) * std::pow(k + 1, alpha));
    }
    if (j <= k) {
        const double d = static_cast<double>(k - j);
        return pref * base *
               (std::pow(d + 2.0, alpha + 1.0) + std::pow(d, alpha + 1.0) -
                2.0 * std::pow(d + 1.0, alpha + 1.0));
    }
    return pref * base;  // j == k+1, the implicit end weight
}

double weight_w(int j, int k, const MeshSpec& mesh, double alpha, double p) {
    if (k < 0 || k >= mesh.n) throw std::out_of_range("weight_w: layer index");
    if (j < 0 || j > k) throw std::out_of_range("weight_w: node index");
    const double d = static_cast<double>(k - j);
    return std::pow(mesh.delta_tau, alpha) / (p * p * gamma_fn(alpha + 1.0)) *
           (std::pow(d + 1.0, alpha) - std::pow(d, alpha));
}

std::pair<Tridiagonal, Eigen::VectorXd> assemble_system(const SolutionGrid& grid, int k) {
    const MeshSpec& mesh = grid.mesh;
    const int m = mesh.m;
    if (k < 0 || k >= mesh.n) throw std::out_of_range("assemble_system: layer index");
    const double alpha = grid.alpha;
    const double phi = grid.phi;
    const auto& cbar = grid.cbar;

    const int rows = m - 1;
    const double r_end = weight_r(k + 1, k, mesh, alpha, grid.p);
    const double tau_next_alpha = std::pow(mesh.tau(k + 1), alpha);

    Tridiagonal A{Eigen::VectorXd(rows - 1), Eigen::VectorXd::Constant(rows, tau_next_alpha + 2.0 * phi * r_end),
                  Eigen::VectorXd(rows - 1)};
    for (int i = 1; i <= rows; ++i) {
        const double q = weight_q(i, k + 1, mesh, alpha);
        if (i > 1) A.lower(i - 2) = -phi * r_end + q;
        if (i < rows) A.upper(i - 1) = -phi * r_end - q;
    }

    const double tau0_alpha = std::pow(mesh.tau0, alpha);
    Eigen::VectorXd b(rows);
    for (int i = 1; i <= rows; ++i) b(i - 1) = cbar(i, 0) * tau0_alpha;

    for (int j = 0; j <= k; ++j) {
        const double blend =
            phi * weight_r(j, k, mesh, alpha, grid.p) + (1.0 - phi) * weight_w(j, k, mesh, alpha, grid.p);
        const double q_base = j >= 1 ? weight_q(1, j, mesh, alpha) : 0.0;
        for (int i = 1; i <= rows; ++i) {
            const double second = cbar(i + 1, j) - 2.0 * cbar(i, j) + cbar(i - 1, j);
            double acc = blend * second;
            if (j >= 1) acc += i * q_base * (cbar(i + 1, j) - cbar(i - 1, j));
            b(i - 1) += acc;
        }
    }

    // boundary corrections with the known column-(k+1) edge values
    b(0) -= (-phi * r_end + weight_q(1, k + 1, mesh, alpha)) * cbar(0, k + 1);
    b(rows - 1) -= (-phi * r_end - weight_q(rows, k + 1, mesh, alpha)) * cbar(m, k + 1);
    return {std::move(A), std::move(b)};
}

Eigen::VectorXd solve_tridiagonal(const Tridiagonal& A, const Eigen::VectorXd& b) {
    const Eigen::Index n = A.diag.size();
    if (A.lower.size() != n - 1 || A.upper.size() != n - 1 || b.size() != n) {
        throw std::invalid_argument("solve_tridiagonal: inconsistent band sizes");
    }
    const double scale = A.diag.cwiseAbs().maxCoeff();
    const double tiny = 1e-300 * std::max(1.0, scale);

    Eigen::VectorXd c(n), d(n);
    double pivot = A.diag(0);
    if (std::abs(pivot) < tiny) throw std::runtime_error("solve_tridiagonal: zero pivot");
    c(0) = n > 1 ? A.upper(0) / pivot : 0.0;
    d(0) = b(0) / pivot;
    for (Eigen::Index i = 1; i < n; ++i) {
        pivot = A.diag(i) - A.lower(i - 1) * c(i - 1);
        if (std::abs(pivot) < tiny) throw std::runtime_error("solve_tridiagonal: zero pivot");
        c(i) = i + 1 < n ? A.upper(i) / pivot : 0.0;
        d(i) = (b(i) - A.lower(i - 1) * d(i - 1)) / pivot;
    }
    Eigen::VectorXd x(n);
    x(n - 1) = d(n - 1);
    for (Eigen::Index i = n - 2; i >= 0; --i) x(i) = d(i) - c(i) * x(i + 1);
    return x;
}

SolutionGrid march(const ModelParams& params, const MeshSpec& mesh, double p, double phi) {
    params.validate();
    if (!(phi >= 0.0 && phi <= 1.0)) throw std::invalid_argument("march: phi must lie in [0, 1]");
    if (!(p > 0.0)) throw std::invalid_argument("march: p must be positive");

    const int m = mesh.m;
    const int n = mesh.n;
    const double alpha = params.alpha;

    SolutionGrid grid;
    grid.mesh = mesh;
    grid.p = p;
    grid.alpha = alpha;
    grid.phi = phi;
    grid.cbar.resize(m + 1, n + 1);

    // Initial layer: the uniform pre-dissolution state, cbar tau0^alpha = 1.
    // The corner node (0, 0) carries the initial value as well; the zero
    // boundary applies from the first genuine time layer on. A zero corner
    // would feed the memory sums a spurious O(tau0^-alpha) second difference
    // at every later step.
    grid.cbar.col(0).setConstant(std::pow(mesh.tau0, -alpha));
    for (int j = 1; j <= n; ++j) {
        grid.cbar(0, j) = 0.0;
        grid.cbar(m, j) = std::pow(mesh.tau(j), -alpha);
    }

    for (int k = 0; k < n; ++k) {
        auto [A, b] = assemble_system(grid, k);
        const Eigen::VectorXd interior = solve_tridiagonal(A, b);
        grid.cbar.block(1, k + 1, m - 1, 1) = interior;
    }
    return grid;
}

PhysicalGrid recover(const SolutionGrid& grid) {
    const int m = grid.mesh.m;
    const int n = grid.mesh.n;
    PhysicalGrid out;
    out.x.resize(m + 1, n + 1);
    out.c.resize(m + 1, n + 1);
    for (int j = 0; j <= n; ++j) {
        const double tau = grid.mesh.tau(j);
        const double tau_alpha = std::pow(tau, grid.alpha);
        const double front = grid.p * std::pow(tau, grid.alpha / 2.0);
        for (int i = 0; i <= m; ++i) {
            out.x(i, j) = i * grid.mesh.delta_u * front;
            out.c(i, j) = grid.cbar(i, j) * tau_alpha;
        }
    }
    return out;
}

}  // namespace substefan
