#include "doublewell/validate.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "doublewell/caustics.hpp"
#include "doublewell/density.hpp"
#include "doublewell/elliptic.hpp"
#include "doublewell/quadrature.hpp"
#include "doublewell/spectral.hpp"
#include "doublewell/trajectories.hpp"

namespace dw::validate {

namespace {

constexpr double kPi = 3.14159265358979323846;

double fit_slope(const std::vector<double>& lx, const std::vector<double>& ly) {
    double n = static_cast<double>(lx.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sx += lx[i];
        sy += ly[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * ly[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

CriterionResult closed_form_check() {
    CriterionResult r{"closed-form", "rho_usual(0,Theta,g) matches (2 pi g sin Theta)^(-1/2) exp(-Theta/4g)",
                      true, 0.0, 1e-8, "", 0.0};
    for (double g : {0.1, 0.3}) {
        for (double th : {0.5, 1.5, 2.5, 3.0}) {
            double got = dw::density::rho_usual(0.0, th, g).rho_usual;
            double want = std::exp(-th / (4.0 * g)) / std::sqrt(2.0 * kPi * g * std::sin(th));
            r.measured = std::max(r.measured, std::abs(got / want - 1.0));
        }
    }
    r.passed = r.measured < r.threshold;
    return r;
}

CriterionResult caustic_cusp_check() {
    CriterionResult r{"caustic-cusp", "cusps at pi (fold), 2pi (A=0) and 3pi (second fold)",
                      true, 0.0, 1.0, "", 0.0};
    double q_near = dw::caustics::caustic_lower(kPi + 1e-4);
    double a_2pi = dw::caustics::amplitude_A(2.0 * kPi);
    double third = dw::caustics::fold_cusp_theta(2, 3.0 * kPi - 0.25, 3.0 * kPi + 0.25, 1e-4);
    bool ok1 = std::abs(q_near) < 1e-2;
    bool ok2 = a_2pi < 1e-8;
    bool ok3 = std::abs(third - 3.0 * kPi) < 1e-3;
    r.passed = ok1 && ok2 && ok3;
    r.measured = std::abs(third - 3.0 * kPi);
    r.threshold = 1e-3;
    std::ostringstream os;
    os << "q0(pi+1e-4)=" << q_near << " A(2pi)=" << a_2pi << " third cusp=" << third;
    r.detail = os.str();
    return r;
}

CriterionResult qstar_check() {
    CriterionResult r{"fig7-qstar", "caustic_lower(5.0) = 0.3332 +- 5e-4", true, 0.0, 5e-4, "", 0.0};
    double q = dw::caustics::caustic_lower(5.0);
    r.measured = std::abs(q - 0.3332);
    r.passed = r.measured < r.threshold;
    std::ostringstream os;
    os << "q* = " << q;
    r.detail = os.str();
    return r;
}

CriterionResult scaling_check() {
    CriterionResult r{"scaling-exponents",
                      "rho_usual ~ |q0|^(-1/3) at Theta=pi; LM contribution ~ |q0-q~0|^(-1/4) at Theta=5",
                      true, 0.0, 0.0, "", 0.0};
    double g = 0.3;
    std::vector<double> lx, ly;
    for (double q0 : {1e-4, 3e-4, 1e-3, 3e-3, 1e-2}) {
        double v = dw::density::rho_usual(q0, kPi, g).rho_usual;
        lx.push_back(std::log(q0));
        ly.push_back(std::log(v));
    }
    double s1 = fit_slope(lx, ly);

    double qstar = dw::caustics::caustic_lower(5.0);
    lx.clear();
    ly.clear();
    for (double d : {1e-5, 3e-5, 1e-4, 3e-4, 1e-3}) {
        auto pt = dw::density::rho_usual(qstar - d, 5.0, g);
        double lm_w = 0.0;
        for (const auto& c : pt.contributions)
            if (c.kind == dw::traj::Kind::LocalMin) lm_w = c.weight;
        lx.push_back(std::log(d));
        ly.push_back(std::log(lm_w));
    }
    double s2 = fit_slope(lx, ly);

    bool ok1 = std::abs(s1 + 1.0 / 3.0) < 0.02;
    bool ok2 = std::abs(s2 + 0.25) < 0.03;
    r.passed = ok1 && ok2;
    r.measured = std::max(std::abs(s1 + 1.0 / 3.0), std::abs(s2 + 0.25));
    r.threshold = 0.03;
    std::ostringstream os;
    os << "slope(pi)=" << s1 << " slope(caustic)=" << s2;
    r.detail = os.str();
    return r;
}

CriterionResult continuity_check() {
    CriterionResult r{"caustic-continuity",
                      "improved density continuous across the fold at eps=1e-5", true, 0.0, 1e-3,
                      "", 0.0};
    double g = 0.3, eps = 1e-5;
    std::ostringstream os;
    for (double th : {3.3, 5.0}) {
        double qs = dw::caustics::caustic_lower(th);
        double lo = dw::density::rho_improved(qs - eps, th, g).rho_improved;
        double hi = dw::density::rho_improved(qs + eps, th, g).rho_improved;
        double mid = dw::density::rho_improved(qs, th, g).rho_improved;
        double jump = std::abs(hi - lo) / mid;
        r.measured = std::max(r.measured, jump);
        os << "Theta=" << th << " jump=" << jump << " ";
    }
    r.passed = r.measured < r.threshold;
    r.detail = os.str();
    return r;
}

CriterionResult classical_limit_check() {
    CriterionResult r{"classical-limit",
                      "|rho_improved/rho_usual - 1| at (0.4,pi) decreases over g and < 1% at g=0.03",
                      true, 0.0, 0.01, "", 0.0};
    std::vector<double> devs;
    for (double g : {0.3, 0.1, 0.03}) {
        auto pt = dw::density::rho_improved(0.4, kPi, g);
        devs.push_back(std::abs(pt.rho_improved / pt.rho_usual - 1.0));
    }
    bool decreasing = devs[0] > devs[1] && devs[1] > devs[2];
    r.measured = devs[2];
    r.passed = decreasing && devs[2] < r.threshold;
    std::ostringstream os;
    os << "dev(0.3)=" << devs[0] << " dev(0.1)=" << devs[1] << " dev(0.03)=" << devs[2];
    r.detail = os.str();
    return r;
}

CriterionResult spread_check() {
    CriterionResult r{"spread-10pct",
                      "usual and improved differ by 5-15% (rel. improved) at g=0.3, Theta=pi",
                      true, 0.0, 0.15, "", 0.0};
    double lo_seen = 1.0, hi_seen = 0.0;
    for (double q0 = 0.2; q0 <= 0.5 + 1e-12; q0 += 0.05) {
        auto pt = dw::density::rho_improved(q0, kPi, 0.3);
        double dev = std::abs(pt.rho_usual - pt.rho_improved) / pt.rho_improved;
        lo_seen = std::min(lo_seen, dev);
        hi_seen = std::max(hi_seen, dev);
    }
    r.passed = lo_seen > 0.05 && hi_seen < 0.15;
    r.measured = hi_seen;
    std::ostringstream os;
    os << "spread in [" << lo_seen << ", " << hi_seen << "]";
    r.detail = os.str();
    return r;
}

CriterionResult oracle_check(double g) {
    CriterionResult r{"oracle-agreement",
                      "max |rho_improved - rho_exact|/rho_exact over q0 in [-0.9,0.9], Theta in {1,2,3}",
                      true, 0.0, 0.05, "", 0.0};
    dw::oracle::GridSpec grid;
    auto basis = dw::oracle::solve_basis(g, grid, 40.0);  // Theta >= 1
    std::ostringstream os;
    for (double th : {1.0, 2.0, 3.0}) {
        double worst = 0.0;
        for (int i = -18; i <= 18; ++i) {
            double q0 = 0.05 * i;
            double imp = dw::density::rho_improved(q0, th, g).rho_improved;
            double ex = basis.rho_at(th, q0);
            worst = std::max(worst, std::abs(imp - ex) / ex);
        }
        os << "Theta=" << th << " worst=" << worst << " ";
        r.measured = std::max(r.measured, worst);
    }
    r.passed = r.measured < r.threshold;
    r.detail = os.str();
    return r;
}

CriterionResult xi_equation_check() {
    CriterionResult r{"xi-equation", "solve_xi endpoints exact; residual < 1e-12 on 1e3 ratios",
                      true, 0.0, 1e-12, "", 0.0};
    bool ends = dw::density::solve_xi(1.0) == 1.0 && dw::density::solve_xi(0.0) == 2.0;
    std::mt19937 rng(20260811);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        double ratio = uni(rng);
        double xi = dw::density::solve_xi(ratio);
        double resid = std::abs(xi * xi * xi * (2.0 - xi) / (2.0 * xi - 1.0) - ratio);
        r.measured = std::max(r.measured, resid);
    }
    r.passed = ends && r.measured < r.threshold;
    return r;
}

CriterionResult elliptic_check() {
    namespace sf = dw::specfun;
    CriterionResult r{"elliptic-substrate",
                      "Carlson/Legendre/quadrature triple agreement and Jacobi identities",
                      true, 0.0, 1e-10, "", 0.0};
    std::mt19937 rng(917);
    std::uniform_real_distribution<double> uphi(-1.5, 1.5), uk(0.01, 0.95), uu(-8.0, 8.0);
    double worst_triple = 0.0, worst_ident = 0.0;
    for (int i = 0; i < 1000; ++i) {
        double phi = uphi(rng), k = uk(rng);
        double via_carlson = sf::legendre_F(phi, k);
        double via_quad = dw::integrate(
            [&](double t) { return 1.0 / std::sqrt(1.0 - k * k * std::sin(t) * std::sin(t)); }, 0.0,
            phi, 1e-14);
        worst_triple = std::max(worst_triple, std::abs(via_carlson - via_quad));

        double u = uu(rng);
        auto j = sf::jacobi_elliptic(u, k);
        worst_ident = std::max(worst_ident, std::abs(j.sn * j.sn + j.cn * j.cn - 1.0));
        worst_ident = std::max(worst_ident, std::abs(j.dn * j.dn + k * k * j.sn * j.sn - 1.0));
    }
    r.measured = std::max(worst_triple, worst_ident);
    r.passed = r.measured < r.threshold;
    std::ostringstream os;
    os << "triple=" << worst_triple << " identities=" << worst_ident;
    r.detail = os.str();
    return r;
}

CriterionResult steepest_descent_check() {
    CriterionResult r{"steepest-descent",
                      "F-based rho_improved matches the two-term saddle sum at g=0.01 to 1%",
                      true, 0.0, 0.01, "", 0.0};
    double g = 0.01, th = 4.5, q0 = 0.1;
    auto pt = dw::density::rho_improved(q0, th, g);
    const auto& p3 = std::get<dw::density::ThreeExtrema>(pt.effpot);
    // Saddle-point evaluation of F: minima of V3 at z=0 and z=xi,
    // V3''(0) = mu xi, V3''(xi) = mu xi (xi - 1)
    double v3_xi = dw::density::v3_value(p3, p3.xi);
    double f_asym = 1.0 + std::exp(-v3_xi) / std::sqrt(p3.xi - 1.0);
    double two_term = pt.rho_improved / pt.f_factor * f_asym;
    r.measured = std::abs(pt.rho_improved / two_term - 1.0);
    r.passed = r.measured < r.threshold;
    std::ostringstream os;
    os << "rho=" << pt.rho_improved << " two-term=" << two_term;
    r.detail = os.str();
    return r;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const Options& opts) {
    std::vector<std::pair<std::string, std::function<CriterionResult()>>> checks = {
        {"closed-form", closed_form_check},
        {"caustic-cusp", caustic_cusp_check},
        {"fig7-qstar", qstar_check},
        {"scaling-exponents", scaling_check},
        {"caustic-continuity", continuity_check},
        {"classical-limit", classical_limit_check},
        {"spread-10pct", spread_check},
        {"oracle-agreement", [&] { return oracle_check(opts.g_oracle.value_or(0.05)); }},
        {"xi-equation", xi_equation_check},
        {"elliptic-substrate", elliptic_check},
        {"steepest-descent", steepest_descent_check},
    };
    std::vector<CriterionResult> out;
    for (auto& [id, fn] : checks) {
        if (!opts.only.empty() &&
            std::find(opts.only.begin(), opts.only.end(), id) == opts.only.end())
            continue;
        auto t0 = std::chrono::steady_clock::now();
        CriterionResult res = fn();
        res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        out.push_back(std::move(res));
    }
    return out;
}

}  // namespace dw::validate
