#pragma once

#include <array>
#include <vector>

namespace dw::caustics {

enum class CurveKind { PairCreation, PeriodicSplit };

// A traced catastrophe boundary in the (q0,Theta) plane, symmetric in q0.
struct CausticCurve {
    CurveKind kind;
    int branch;  // 1-based within its kind
    std::array<double, 2> cusp;             // (q0, Theta)
    std::vector<std::array<double, 2>> points;  // ordered (q0, Theta) polyline
};

// Fold boundary q~0(Theta) >= 0 traced from the m-th fold of q0(.,Theta);
// branch 1 is the curve with cusp at (0,pi).
double caustic_lower(double theta);
double fold_boundary(double theta, int m);

// Amplitude A(Theta) of the period-(Theta/m) orbits; cusp at (0, 2*m*pi).
double amplitude_A(double theta, int m = 1);

enum class Side {
    OneSolution,    // below the first caustic: complex-pair regime
    ThreeSolution,  // between first and second curves
    PeriodicRegion, // inside the second curve: periodic one-saddles exist
    OnFirst,
    OnSecond,
};

struct Region {
    int n_solutions;  // odd; includes periodic trajectories
    Side side;
};

Region classify_region(double q0, double theta);

std::vector<CausticCurve> trace_curves(double theta_max, double step = 1e-2);

// Numerically locate the cusp of the m-th fold curve by bisecting on the
// existence of its fold point (expected at (2m-1)*pi).
double fold_cusp_theta(int m, double lo, double hi, double tol = 1e-4);

}  // namespace dw::caustics
