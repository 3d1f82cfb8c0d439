#pragma once

#include <complex>
#include <utility>
#include <vector>

namespace dw::traj {

using Complex = std::complex<double>;

// Dimensionless controls: g = hbar*lambda/(m^2 omega^3), Theta = beta*hbar*omega.
struct PhysParams {
    double g;
    double theta;
};

// Rescaled double-well potential U(q) = (q^2-1)^2/4 and its derivative.
inline double potential(double q) {
    double w = q * q - 1.0;
    return 0.25 * w * w;
}
inline Complex potential(const Complex& q) {
    Complex w = q * q - 1.0;
    return 0.25 * w * w;
}
inline double potential_prime(double q) { return q * (q * q - 1.0); }

enum class Kind { GlobalMin, LocalMin, Saddle, ComplexPair };

// One extremum of the Euclidean action, parameterized by its turning point.
struct TrajectorySolution {
    Complex q_t;
    double q0;           // endpoint this solution satisfies
    Complex action_I;    // dimensionless action I[q_c]; real for real q_t
    double det_delta;    // fluctuation determinant; NaN when not defined
    Kind kind;
    int saddle_order;    // n for Saddle(n); 0 for minima and the complex pair
    int branch_index;    // monotonic branch of q0(.,Theta); -1 if off-branch
};

// Endpoint map q0 = q_t cd(u,k), u = (Theta/2) sqrt(1 - q_t^2/2),
// k^2 = q_t^2/(2 - q_t^2). Odd in q_t.
double q0_of_qt(double q_t, double theta);
Complex q0_of_qt(const Complex& q_t, double theta);

// (dq0/dq_t) at fixed Theta: complex-step on the real axis, Richardson
// central differences off it.
double dq0_dqt(double q_t, double theta);
Complex dq0_dqt(const Complex& q_t, double theta);

// Positive zeros of dq0_dqt on (0,1), ascending (fold points).
std::vector<double> fold_points(double theta);

// Cancellation-free action gaps at the symmetric point q0 = 0:
// I(i xi_1) - Theta/4 for Theta < pi (negative), and Theta/4 - I(A0) for
// Theta > pi (positive), both shrinking like the fourth power of the
// coalescing turning point near the cusp.
double imaginary_pair_action_gap(double theta);
double symmetric_minimum_action_gap(double theta);

// First positive root xi_j of the purely imaginary endpoint condition
// q0(i*xi,Theta)=0, i.e. u = (2j-1) K on the imaginary axis.
double imaginary_axis_root(double theta, int j = 1);

// Amplitude of the period-(Theta/m) orbit: root of u(q_t) = 2 m K(k).
double periodic_amplitude(double theta, int m = 1);

// Action I[q_c]:
//  - closed elliptic form for real turning points (principal region plus the
//    sign-flipped continuation for q0 < 0),
//  - theta-quadrature of the explicit trajectory otherwise (single-valued,
//    no branch bookkeeping).
double action_closed_form(double q_t, double q0, double theta);
// General real-branch action: the closed form plus full-sweep periodicity
// reduction for trajectories spanning more than one half-period.
double action_real(double q_t, double q0, double theta);
Complex action_quadrature(const Complex& q_t, double theta);
Complex action(const Complex& q_t, double q0, double theta);

// Fluctuation determinant around a real trajectory (finite q_t -> 0 limit
// evaluated analytically). Negative for odd saddles.
double fluct_det(double q_t, double q0, double theta, double g);
inline bool on_caustic(double delta, double tol = 1e-8) { return std::abs(delta) < tol; }

// All real turning points at (q0,Theta), sorted by descending q_t, kinds
// assigned by branch position and action ordering.
std::vector<TrajectorySolution> find_real_turning_points(double q0, double theta);

// The conjugate pair that coalesces with (local minimum, saddle) on the
// caustic; first member has Im q_t > 0. Found by continuation in q0 from the
// imaginary axis (Theta < pi), from the fold (Theta > pi), or from a cubic
// normal-form seed near the cusp.
std::pair<TrajectorySolution, TrajectorySolution> find_complex_pair(double q0, double theta);

// Periodic one-saddle for Theta > 2 pi, |q0| < A(Theta). Stored with the
// representative endpoints (q0,q_t) = (-A, A) so the closed-form action
// applies; the action is shared by every phase of the orbit.
TrajectorySolution periodic_saddle(double q0, double theta);

// Real turning points plus the periodic pair where it exists.
std::vector<TrajectorySolution> solution_set(double q0, double theta);
int total_solution_count(double q0, double theta);

}  // namespace dw::traj
