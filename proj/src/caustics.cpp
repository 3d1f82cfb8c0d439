#include "doublewell/caustics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "doublewell/trajectories.hpp"

namespace dw::caustics {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kBand = 1e-9;  // on-caustic tolerance band in q0
}

double fold_boundary(double theta, int m) {
    if (m < 1) throw std::domain_error("fold_boundary: m >= 1");
    if (theta <= (2 * m - 1) * kPi)
        throw std::domain_error("fold_boundary: Theta at or below the cusp");
    auto folds = dw::traj::fold_points(theta);
    if (static_cast<int>(folds.size()) < m)
        throw std::runtime_error("fold_boundary: fold not resolved");
    // folds appear at q_t ~ 0 and drift outward, so descending q_t matches
    // ascending cusp order
    double q_t = folds[folds.size() - m];
    return std::abs(dw::traj::q0_of_qt(q_t, theta));
}

double caustic_lower(double theta) { return fold_boundary(theta, 1); }

double amplitude_A(double theta, int m) { return dw::traj::periodic_amplitude(theta, m); }

Region classify_region(double q0, double theta) {
    if (std::abs(q0) >= 1.0) throw std::domain_error("classify_region: |q0| >= 1");
    double aq = std::abs(q0);
    int n = 1;
    Side side = Side::OneSolution;

    auto folds = dw::traj::fold_points(theta);
    std::vector<double> fold_q0;
    for (auto it = folds.rbegin(); it != folds.rend(); ++it)
        fold_q0.push_back(std::abs(dw::traj::q0_of_qt(*it, theta)));

    if (!fold_q0.empty()) {
        double q1 = fold_q0.front();
        if (std::abs(aq - q1) <= kBand) return {3, Side::OnFirst};
        if (aq < q1) {
            side = Side::ThreeSolution;
            for (double qb : fold_q0)
                if (aq < qb - kBand) n += 2;
        }
    }
    for (int m = 1; theta > 2.0 * m * kPi; ++m) {
        double amp = dw::traj::periodic_amplitude(theta, m);
        if (m == 1 && std::abs(aq - amp) <= kBand) return {n + 2, Side::OnSecond};
        if (aq < amp) {
            n += 2;
            if (m == 1) side = Side::PeriodicRegion;
        }
    }
    return {n, side};
}

namespace {

std::vector<double> theta_samples(double cusp, double theta_max, double step) {
    // geometric refinement out of the cusp, where the curve is steep in Theta
    std::vector<double> ts;
    for (double d = 1e-6; d < step; d *= 2.0)
        if (cusp + d < theta_max) ts.push_back(cusp + d);
    for (double t = cusp + step; t < theta_max; t += step) ts.push_back(t);
    ts.push_back(theta_max);
    return ts;
}

}  // namespace

std::vector<CausticCurve> trace_curves(double theta_max, double step) {
    if (theta_max <= kPi) throw std::domain_error("trace_curves: theta_max <= pi");
    if (step <= 0.0) throw std::domain_error("trace_curves: step <= 0");
    std::vector<CausticCurve> curves;

    struct Spec {
        CurveKind kind;
        int branch;
        double cusp;
    };
    std::vector<Spec> specs;
    for (int m = 1; (2 * m - 1) * kPi < theta_max; ++m)
        specs.push_back({CurveKind::PairCreation, m, (2 * m - 1) * kPi});
    for (int m = 1; 2 * m * kPi < theta_max; ++m)
        specs.push_back({CurveKind::PeriodicSplit, m, 2 * m * kPi});
    std::sort(specs.begin(), specs.end(), [](const Spec& a, const Spec& b) { return a.cusp < b.cusp; });

    for (const auto& sp : specs) {
        CausticCurve c;
        c.kind = sp.kind;
        c.branch = sp.branch;
        c.cusp = {0.0, sp.cusp};
        auto ts = theta_samples(sp.cusp, theta_max, step);
        std::vector<std::array<double, 2>> wing;
        for (double t : ts) {
            double q;
            try {
                q = sp.kind == CurveKind::PairCreation ? fold_boundary(t, sp.branch)
                                                       : amplitude_A(t, sp.branch);
            } catch (const std::exception&) {
                break;  // report what was traced up to the failure
            }
            wing.push_back({q, t});
        }
        for (auto it = wing.rbegin(); it != wing.rend(); ++it) c.points.push_back({-(*it)[0], (*it)[1]});
        c.points.push_back(c.cusp);
        for (const auto& p : wing) c.points.push_back(p);
        curves.push_back(std::move(c));
    }
    return curves;
}

double fold_cusp_theta(int m, double lo, double hi, double tol) {
    auto exists = [&](double theta) {
        return static_cast<int>(dw::traj::fold_points(theta).size()) >= m;
    };
    if (exists(lo) || !exists(hi)) throw std::domain_error("fold_cusp_theta: bad bracket");
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        (exists(mid) ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace dw::caustics
