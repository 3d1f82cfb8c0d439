#pragma once

#include <functional>
#include <vector>

#include "doublewell/trajectories.hpp"

namespace dw::oracle {

struct GridSpec {
    double q_min = -4.0;
    double q_max = 4.0;
    int n_points = 2048;
    bool fourth_order = false;  // fourth-order stencil behind a flag
    // test hook: replaces the double-well potential U(q) when set
    std::function<double(double)> potential_override;
};

// Eigenbasis of h = -(g/2) d^2/dq^2 + U(q)/g with Dirichlet walls; energies
// in units of hbar*omega, wavefunctions orthonormal w.r.t. the grid measure.
struct Eigenbasis {
    double g;
    std::vector<double> grid;      // q values, uniform
    std::vector<double> energies;  // ascending
    std::vector<double> psi;       // column-major, n_points x n_states
    double dq;

    int n_states() const { return static_cast<int>(energies.size()); }
    // diagonal thermal density rho(q_i) = sum_n |psi_n(q_i)|^2 exp(-Theta eps_n)
    std::vector<double> rho_diag(double theta) const;
    double rho_at(double theta, double q) const;  // linear interpolation
};

// Retains every state with Theta*eps_n <= 40 (tail below 1e-14).
Eigenbasis solve_basis(double g, const GridSpec& grid, double eps_max);

struct SpectralSolution {
    std::vector<double> energies;
    std::vector<double> grid;
    std::vector<double> rho;  // dimensionless diagonal density a*rho(x,x)
};

SpectralSolution exact_rho_diag(const traj::PhysParams& params, const GridSpec& grid = {});

}  // namespace dw::oracle
