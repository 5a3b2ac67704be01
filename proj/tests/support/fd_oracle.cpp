#include "fd_oracle.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace oracle {

std::vector<double> finite_volume_eigenvalues(double beta, double sigma0, double sigma_inf, int cells, int count) {
    const double p = sigma0 / (2 * beta), q = sigma_inf / (2 * beta), s = p + q;
    const double h = 2.0 / cells;
    auto w1 = [&](double x) { return std::pow(1 - x, 2 * p + 1) * std::pow(1 + x, 2 * q + 1); };

    // Cell masses ∫ W₀ over each cell; the singular factor is integrated exactly at the ends.
    Eigen::VectorXd mass(cells);
    for (int i = 0; i < cells; ++i) {
        const double x = -1 + (i + 0.5) * h;
        mass(i) = std::pow(1 - x, 2 * p) * std::pow(1 + x, 2 * q) * h;
    }
    mass(0) = std::pow(2 - 0.5 * h, 2 * p) * std::pow(h, 2 * q + 1) / (2 * q + 1);
    mass(cells - 1) = std::pow(2 - 0.5 * h, 2 * q) * std::pow(h, 2 * p + 1) / (2 * p + 1);

    Eigen::VectorXd conductance(cells - 1);
    for (int i = 0; i + 1 < cells; ++i) conductance(i) = w1(-1 + (i + 1) * h) / h;

    Eigen::VectorXd diag = Eigen::VectorXd::Zero(cells), sub(cells - 1);
    for (int i = 0; i + 1 < cells; ++i) {
        diag(i) += conductance(i);
        diag(i + 1) += conductance(i);
    }
    for (int i = 0; i < cells; ++i) diag(i) /= mass(i);
    for (int i = 0; i + 1 < cells; ++i) sub(i) = -conductance(i) / std::sqrt(mass(i) * mass(i + 1));

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    std::vector<double> out;
    for (int i = 0; i < count && i < cells; ++i) out.push_back(solver.eigenvalues()(i) + s * (s + 1));
    return out;
}

std::vector<double> legendre_eigenvalues(double beta, double sigma0, double sigma_inf, double lambda_max) {
    const double s = (sigma0 + sigma_inf) / (2 * beta);
    std::vector<double> out;
    for (int m = 0;; ++m) {
        const double l = (m + s) * (m + s + 1);
        if (l > lambda_max) break;
        if (l > 0) out.push_back(l);
    }
    return out;
}

}  // namespace oracle
