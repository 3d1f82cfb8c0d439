#pragma once

#include <complex>
#include <variant>
#include <vector>

#include "doublewell/trajectories.hpp"

namespace dw::density {

using Complex = std::complex<double>;

// Effective quartic potential on the critical fluctuation mode, in the two
// parameterizations. V3(z) = mu [xi z^2/2 - (1+xi) z^3/3 + z^4/4] has extrema
// at z = {0, 1, xi}; V1(z) = chi [z^2/2 - (2 cos phi/3) z^3 + z^4/4] has its
// only real extremum at z = 0. Exponents are in units of I/g (hbar = 1).
struct ThreeExtrema {
    double xi;  // in [1,2]
    double mu;  // > 0
};
struct ComplexPair {
    double chi;  // > 0
    double phi;  // in (0, pi/2]
};
using EffectivePotential = std::variant<ThreeExtrema, ComplexPair>;

double v3_value(const ThreeExtrema& p, double z);
double v1_value(const ComplexPair& p, double z);

// Unique root of xi^3 (2-xi)/(2 xi - 1) = ratio in [1,2]; exact at both ends.
double solve_xi(double ratio);

EffectivePotential build_effpot_three(double i_gm, double i_lm, double i_sp, double g);
EffectivePotential build_effpot_complex(double i_gm, Complex i_ct, double g);

// F = sqrt(mu xi / 2 pi) Int exp(-V3) dz  (resp. sqrt(chi / 2 pi), V1).
double fluctuation_factor(const EffectivePotential& pot);

struct Contribution {
    traj::Kind kind;
    Complex action_I;
    double det_delta;  // NaN when not defined
    double weight;     // exp(-I/g)/sqrt(det) for minima, else 0
};

struct DensityPoint {
    double q0, theta, g;
    double rho_usual;       // +inf when flagged on a caustic
    bool usual_on_caustic;
    double rho_improved;
    double f_factor;
    EffectivePotential effpot;
    int n_solutions;
    std::vector<Contribution> contributions;
};

// Usual approximation: sum over action minima of exp(-I/g) Delta^{-1/2}.
DensityPoint rho_usual(double q0, double theta, double g);

// Improved approximation: exp(-I_gm/g) Delta_gm^{-1/2} F, finite across
// caustics; case selection by region.
DensityPoint rho_improved(double q0, double theta, double g);

}  // namespace dw::density
