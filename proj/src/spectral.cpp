#include "doublewell/spectral.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dw::oracle {

std::vector<double> Eigenbasis::rho_diag(double theta) const {
    int n = static_cast<int>(grid.size());
    std::vector<double> out(n, 0.0);
    for (int s = 0; s < n_states(); ++s) {
        double w = std::exp(-theta * energies[s]);
        const double* col = psi.data() + static_cast<std::size_t>(s) * n;
        for (int i = 0; i < n; ++i) out[i] += w * col[i] * col[i];
    }
    return out;
}

double Eigenbasis::rho_at(double theta, double q) const {
    int n = static_cast<int>(grid.size());
    if (q < grid.front() || q > grid.back()) throw std::domain_error("rho_at: q outside grid");
    double t = (q - grid.front()) / dq;
    // cubic Lagrange through the four surrounding nodes
    int i = std::clamp(static_cast<int>(t) - 1, 0, n - 4);
    double x = t - i;
    double w0 = -(x - 1.0) * (x - 2.0) * (x - 3.0) / 6.0;
    double w1 = x * (x - 2.0) * (x - 3.0) / 2.0;
    double w2 = -x * (x - 1.0) * (x - 3.0) / 2.0;
    double w3 = x * (x - 1.0) * (x - 2.0) / 6.0;
    double out = 0.0;
    for (int s = 0; s < n_states(); ++s) {
        double w = std::exp(-theta * energies[s]);
        const double* col = psi.data() + static_cast<std::size_t>(s) * n;
        double v0 = col[i] * col[i], v1 = col[i + 1] * col[i + 1];
        double v2 = col[i + 2] * col[i + 2], v3 = col[i + 3] * col[i + 3];
        out += w * (w0 * v0 + w1 * v1 + w2 * v2 + w3 * v3);
    }
    return out;
}

Eigenbasis solve_basis(double g, const GridSpec& grid, double eps_max) {
    if (g <= 0.0) throw std::domain_error("solve_basis: g must be positive");
    int n = grid.n_points;
    if (n < 16) throw std::domain_error("solve_basis: grid too coarse");
    double dq = (grid.q_max - grid.q_min) / (n + 1);  // interior points, Dirichlet walls

    auto potential = [&](double q) {
        if (grid.potential_override) return grid.potential_override(q);
        return dw::traj::potential(q);
    };

    int kd = grid.fourth_order ? 2 : 1;
    std::vector<double> ab(static_cast<std::size_t>(kd + 1) * n, 0.0);
    double kin = 0.5 * g / (dq * dq);
    // banded lower storage, column-major: ab[i - j + kd*... ] per LAPACK 'L'
    for (int j = 0; j < n; ++j) {
        double q = grid.q_min + (j + 1) * dq;
        double diag = potential(q) / g + (grid.fourth_order ? 2.5 * kin : 2.0 * kin);
        ab[static_cast<std::size_t>(j) * (kd + 1)] = diag;
        if (j + 1 < n)
            ab[static_cast<std::size_t>(j) * (kd + 1) + 1] =
                grid.fourth_order ? -4.0 / 3.0 * kin : -kin;
        if (grid.fourth_order && j + 2 < n)
            ab[static_cast<std::size_t>(j) * (kd + 1) + 2] = kin / 12.0;
    }

    std::vector<double> w(n), z(static_cast<std::size_t>(n) * n), q_work(static_cast<std::size_t>(n) * n);
    std::vector<lapack_int> ifail(n);
    lapack_int m = 0;
    lapack_int info = LAPACKE_dsbevx(LAPACK_COL_MAJOR, 'V', 'V', 'L', n, kd, ab.data(), kd + 1,
                                     q_work.data(), n, 0.0, eps_max, 0, 0, 2.0 * LAPACKE_dlamch('S'),
                                     &m, w.data(), z.data(), n, ifail.data());
    if (info != 0) throw std::runtime_error("solve_basis: dsbevx failed");
    if (m == 0) throw std::runtime_error("solve_basis: no states below eps_max");

    Eigenbasis basis;
    basis.g = g;
    basis.dq = dq;
    basis.grid.resize(n);
    for (int i = 0; i < n; ++i) basis.grid[i] = grid.q_min + (i + 1) * dq;
    basis.energies.assign(w.begin(), w.begin() + m);
    basis.psi.resize(static_cast<std::size_t>(n) * m);
    double norm = 1.0 / std::sqrt(dq);  // grid-measure normalization
    for (lapack_int s = 0; s < m; ++s)
        for (int i = 0; i < n; ++i)
            basis.psi[static_cast<std::size_t>(s) * n + i] =
                z[static_cast<std::size_t>(s) * n + i] * norm;
    return basis;
}

SpectralSolution exact_rho_diag(const traj::PhysParams& params, const GridSpec& grid) {
    if (params.theta <= 0.0) throw std::domain_error("exact_rho_diag: Theta must be positive");
    double eps_max = 40.0 / params.theta;
    auto basis = solve_basis(params.g, grid, eps_max);

    SpectralSolution sol;
    sol.energies = basis.energies;
    sol.grid = basis.grid;
    sol.rho = basis.rho_diag(params.theta);
    if (sol.rho.front() > 1e-12 || sol.rho.back() > 1e-12)
        throw std::runtime_error("exact_rho_diag: grid too small (boundary density > 1e-12)");
    return sol;
}

}  // namespace dw::oracle
