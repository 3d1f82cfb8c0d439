#include "doublewell/density.hpp"

#include <algorithm>
#include <functional>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "doublewell/caustics.hpp"
#include "doublewell/quadrature.hpp"
#include "doublewell/tuning.hpp"

namespace dw::density {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kDetBand = 1e-8;  // |Delta| band flagged as on-caustic
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

double v3_value(const ThreeExtrema& p, double z) {
    return p.mu * (0.5 * p.xi * z * z - (1.0 + p.xi) * z * z * z / 3.0 + 0.25 * z * z * z * z);
}

double v1_value(const ComplexPair& p, double z) {
    return p.chi * (0.5 * z * z - (2.0 * std::cos(p.phi) / 3.0) * z * z * z + 0.25 * z * z * z * z);
}

double solve_xi(double ratio) {
    if (ratio < 0.0 || ratio > 1.0) throw std::domain_error("solve_xi: ratio outside [0,1]");
    if (ratio >= 1.0) return 1.0;
    if (ratio <= 0.0) return 2.0;
    auto f = [&](double x) { return x * x * x * (2.0 - x) / (2.0 * x - 1.0) - ratio; };
    double lo = 1.0, hi = 2.0;  // f decreasing, f(1) = 1-ratio > 0
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        (f(mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

EffectivePotential build_effpot_three(double i_gm, double i_lm, double i_sp, double g) {
    if (g <= 0.0) throw std::domain_error("build_effpot_three: g must be positive");
    double gap = i_sp - i_gm;
    if (gap <= 0.0) throw std::domain_error("build_effpot_three: I_sp <= I_gm");
    double ratio = (i_lm - i_gm) / gap;
    if (ratio < -1e-9 || ratio > 1.0 + 1e-9)
        throw std::domain_error("build_effpot_three: action ordering violated");
    double xi = solve_xi(std::clamp(ratio, 0.0, 1.0));
    double mu = 12.0 * gap / (g * (2.0 * xi - 1.0));
    return ThreeExtrema{xi, mu};
}

EffectivePotential build_effpot_complex(double i_gm, Complex i_ct, double g) {
    if (g <= 0.0) throw std::domain_error("build_effpot_complex: g must be positive");
    Complex d = (i_ct - i_gm) / g;
    if (d.imag() < 0.0) d = std::conj(d);  // canonical member of the pair

    auto fphi = [](double p) {
        return 2.0 * std::exp(Complex(0.0, 2.0 * p)) - std::exp(Complex(0.0, 4.0 * p));
    };
    double phi, chi;
    if (d.imag() <= 1e-14 * std::abs(d.real())) {
        if (d.real() < 0.0) {       // symmetric point q0 = 0: even quartic
            phi = 0.5 * kPi;
            chi = -4.0 * d.real();
        } else if (d.real() > 0.0) {  // coalescence limit, matches xi -> 1
            phi = 0.0;
            chi = 12.0 * d.real();
        } else {
            throw std::domain_error("build_effpot_complex: I_ct = I_gm");
        }
    } else {
        // arg(2 e^{2 i phi} - e^{4 i phi}) increases 0 -> pi on (0, pi/2);
        // match it to arg(d)
        double arg_d = std::atan2(d.imag(), d.real());
        double lo = 0.0, hi = 0.5 * kPi;
        for (int it = 0; it < 200; ++it) {
            double mid = 0.5 * (lo + hi);
            if (mid == lo || mid == hi) break;
            (std::arg(fphi(mid)) < arg_d ? lo : hi) = mid;
        }
        phi = 0.5 * (lo + hi);
        chi = 12.0 * std::abs(d) / std::abs(fphi(phi));
    }
    if (!(chi > 0.0))
        throw std::domain_error("build_effpot_complex: no solution with chi > 0 (misidentified trajectory)");
    return ComplexPair{chi, phi};
}

namespace {

// integration window: V <= 40 keeps the discarded tail below 1e-16 of the peak
double expand_to(const std::function<double(double)>& v, double from, double dir) {
    double z = from + dir;
    for (int it = 0; it < 60 && v(z) < 40.0; ++it) z += dir * std::abs(z - from);
    double lo = from, hi = z;
    for (int it = 0; it < 60; ++it) {
        double mid = 0.5 * (lo + hi);
        (v(mid) < 40.0 ? lo : hi) = mid;
    }
    return hi;
}

double integrate_exp(const std::function<double(double)>& v, std::vector<double> nodes) {
    std::sort(nodes.begin(), nodes.end());
    double zl = expand_to(v, nodes.front(), -1.0);
    double zr = expand_to(v, nodes.back(), +1.0);
    std::vector<double> pts{zl};
    for (double n : nodes)
        if (n > pts.back()) pts.push_back(n);
    pts.push_back(zr);
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
        total += integrate([&](double z) { return std::exp(-v(z)); }, pts[i], pts[i + 1],
                           dw::tuning::quad_tol.load());
    return total;
}

}  // namespace

double fluctuation_factor(const EffectivePotential& pot) {
    if (const auto* p3 = std::get_if<ThreeExtrema>(&pot)) {
        if (!(p3->mu > 0.0)) throw std::domain_error("fluctuation_factor: mu <= 0");
        auto v = [p = *p3](double z) { return v3_value(p, z); };
        double val = integrate_exp(v, {0.0, 1.0, p3->xi});
        return std::sqrt(p3->mu * p3->xi / (2.0 * kPi)) * val;
    }
    const auto& p1 = std::get<ComplexPair>(pot);
    if (!(p1.chi > 0.0)) throw std::domain_error("fluctuation_factor: chi <= 0");
    auto v = [p = p1](double z) { return v1_value(p, z); };
    double val = integrate_exp(v, {0.0, std::cos(p1.phi)});
    return std::sqrt(p1.chi / (2.0 * kPi)) * val;
}

namespace {

struct Skeleton {
    std::vector<traj::TrajectorySolution> sols;  // descending q_t
    const traj::TrajectorySolution* gm = nullptr;
    const traj::TrajectorySolution* lm = nullptr;
    double det_gm = kNaN, det_lm = kNaN;
};

Skeleton real_skeleton(double q0, double theta, double g) {
    Skeleton sk;
    sk.sols = traj::find_real_turning_points(q0, theta);
    for (const auto& s : sk.sols) {
        if (s.kind == traj::Kind::GlobalMin) sk.gm = &s;
        if (s.kind == traj::Kind::LocalMin) sk.lm = &s;
    }
    if (sk.gm) sk.det_gm = traj::fluct_det(sk.gm->q_t.real(), q0, theta, g);
    if (sk.lm) sk.det_lm = traj::fluct_det(sk.lm->q_t.real(), q0, theta, g);
    return sk;
}

void fill_contributions(DensityPoint& pt, const Skeleton& sk) {
    for (const auto& s : sk.sols) {
        Contribution c;
        c.kind = s.kind;
        c.action_I = s.action_I;
        c.det_delta = s.kind == traj::Kind::GlobalMin   ? sk.det_gm
                      : s.kind == traj::Kind::LocalMin  ? sk.det_lm
                                                        : kNaN;
        c.weight = 0.0;
        if (s.kind == traj::Kind::GlobalMin || s.kind == traj::Kind::LocalMin) {
            if (std::isfinite(c.det_delta) && c.det_delta > 0.0)
                c.weight = std::exp(-s.action_I.real() / pt.g) / std::sqrt(c.det_delta);
        }
        pt.contributions.push_back(c);
    }
}

}  // namespace

DensityPoint rho_usual(double q0, double theta, double g) {
    if (g <= 0.0 || theta <= 0.0) throw std::domain_error("rho_usual: need g > 0, Theta > 0");
    double aq = std::abs(q0);
    if (aq >= 1.0) throw std::domain_error("rho_usual: |q0| >= 1");

    DensityPoint pt;
    pt.q0 = q0;
    pt.theta = theta;
    pt.g = g;
    pt.rho_improved = kNaN;
    pt.f_factor = kNaN;
    pt.effpot = ThreeExtrema{kNaN, kNaN};
    pt.n_solutions = traj::total_solution_count(aq, theta);

    auto sk = real_skeleton(aq, theta, g);
    fill_contributions(pt, sk);

    double total = 0.0;
    bool flagged = false;
    for (const auto& s : sk.sols) {
        if (s.kind != traj::Kind::GlobalMin && s.kind != traj::Kind::LocalMin) continue;
        double det = s.kind == traj::Kind::GlobalMin ? sk.det_gm : sk.det_lm;
        if (traj::on_caustic(det, kDetBand)) {
            flagged = true;
            continue;
        }
        if (det < 0.0) throw std::runtime_error("rho_usual: negative determinant at a minimum");
        total += std::exp(-s.action_I.real() / g) / std::sqrt(det);
    }
    pt.usual_on_caustic = flagged;
    pt.rho_usual = flagged ? kInf : total;
    return pt;
}

DensityPoint rho_improved(double q0, double theta, double g) {
    if (g <= 0.0 || theta <= 0.0) throw std::domain_error("rho_improved: need g > 0, Theta > 0");
    double aq = std::abs(q0);
    if (aq >= 1.0) throw std::domain_error("rho_improved: |q0| >= 1");

    // exact cusp point: evaluate the q0 -> 0 limit a hair off the tip
    if (aq < 1e-12 && std::abs(theta - kPi) <= 2e-9) aq = 1e-10;

    DensityPoint pt;
    pt.q0 = q0;
    pt.theta = theta;
    pt.g = g;
    pt.n_solutions = traj::total_solution_count(aq, theta);

    auto region = caustics::classify_region(aq, theta);
    auto sk = real_skeleton(aq, theta, g);
    if (!sk.gm) throw std::runtime_error("rho_improved: no global minimum found");
    double i_gm = sk.gm->action_I.real();

    EffectivePotential pot;
    // symmetric point: gaps evaluated in split form (the generic subtraction
    // loses all digits when the pair sits close to the cusp)
    if (aq < 1e-12 && region.side == caustics::Side::OneSolution) {
        pot = ComplexPair{-4.0 * traj::imaginary_pair_action_gap(theta) / g, 0.5 * kPi};
        pt.effpot = pot;
        pt.f_factor = fluctuation_factor(pot);
        pt.rho_improved = std::exp(-i_gm / g) / std::sqrt(sk.det_gm) * pt.f_factor;
        fill_contributions(pt, sk);
        pt.rho_usual = pt.contributions.front().weight;
        pt.usual_on_caustic = traj::on_caustic(sk.det_gm, kDetBand);
        if (pt.usual_on_caustic) pt.rho_usual = kInf;
        return pt;
    }
    if (aq < 1e-12 && region.side != caustics::Side::OneSolution) {
        double gap = traj::symmetric_minimum_action_gap(theta);
        if (theta > 2.0 * kPi) {
            // the lowest saddle is periodic there; gaps are O(1), no split needed
            gap = traj::periodic_saddle(0.0, theta).action_I.real() - i_gm;
        }
        pot = ThreeExtrema{2.0, 4.0 * gap / g};
        pt.effpot = pot;
        pt.f_factor = fluctuation_factor(pot);
        pt.rho_improved = std::exp(-i_gm / g) / std::sqrt(sk.det_gm) * pt.f_factor;
        fill_contributions(pt, sk);
        double tot = 0.0;
        bool flag = false;
        for (const auto& c : pt.contributions) {
            if (c.kind != traj::Kind::GlobalMin && c.kind != traj::Kind::LocalMin) continue;
            if (traj::on_caustic(c.det_delta, kDetBand)) flag = true;
            else tot += c.weight;
        }
        pt.usual_on_caustic = flag;
        pt.rho_usual = flag ? kInf : tot;
        return pt;
    }
    switch (region.side) {
        case caustics::Side::OneSolution: {
            auto pair = traj::find_complex_pair(aq, theta);
            Complex i_ct = pair.first.action_I;
            pot = build_effpot_complex(i_gm, i_ct, g);
            break;
        }
        case caustics::Side::OnFirst: {
            // coalesced pair: xi = 1 with the fold action as the saddle level
            auto folds = traj::fold_points(theta);
            double qt_fold = -folds.back();  // branch carrying positive q0
            double i_sp = traj::action_closed_form(qt_fold, aq, theta);
            pot = build_effpot_three(i_gm, i_sp, i_sp, g);
            break;
        }
        default: {
            if (!sk.lm) throw std::runtime_error("rho_improved: missing local minimum");
            double i_lm = sk.lm->action_I.real();
            double i_sp;
            if (region.side == caustics::Side::PeriodicRegion ||
                region.side == caustics::Side::OnSecond) {
                i_sp = traj::periodic_saddle(std::min(aq, traj::periodic_amplitude(theta) - 1e-15),
                                             theta)
                           .action_I.real();
            } else {
                i_sp = kInf;
                for (const auto& s : sk.sols)
                    if (s.kind == traj::Kind::Saddle) i_sp = std::min(i_sp, s.action_I.real());
                if (!std::isfinite(i_sp)) throw std::runtime_error("rho_improved: missing saddle");
            }
            pot = build_effpot_three(i_gm, std::min(i_lm, i_sp), i_sp, g);
            break;
        }
    }

    pt.effpot = pot;
    pt.f_factor = fluctuation_factor(pot);
    pt.rho_improved = std::exp(-i_gm / g) / std::sqrt(sk.det_gm) * pt.f_factor;

    fill_contributions(pt, sk);
    double total = 0.0;
    bool flagged = false;
    for (const auto& c : pt.contributions) {
        if (c.kind != traj::Kind::GlobalMin && c.kind != traj::Kind::LocalMin) continue;
        if (traj::on_caustic(c.det_delta, kDetBand)) {
            flagged = true;
            continue;
        }
        total += c.weight;
    }
    pt.usual_on_caustic = flagged;
    pt.rho_usual = flagged ? kInf : total;
    return pt;
}

}  // namespace dw::density
