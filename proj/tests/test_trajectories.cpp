#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"
#include "doublewell/elliptic.hpp"
#include "doublewell/quadrature.hpp"
#include "doublewell/trajectories.hpp"

using namespace dw::traj;
using Cx = std::complex<double>;

namespace {

constexpr double kPi = 3.14159265358979323846;

// time-of-flight oracle: Theta/2 = int_{q0}^{qt} dq / sqrt(2 (U - U(qt))),
// regularized by q = qt - t^2
double time_of_flight(double qt, double q0) {
    double tmax = std::sqrt(qt - q0);
    return dw::integrate(
        [&](double t) {
            double q = qt - t * t;
            return 2.0 * t / std::sqrt(2.0 * (potential(q) - potential(qt)));
        },
        0.0, tmax, 1e-12);
}

// action oracle along the real segment (independent of the elliptic route)
double action_segment(double qt, double q0, double theta) {
    double tmax = std::sqrt(qt - q0);
    double integral = dw::integrate(
        [&](double t) {
            double q = qt - t * t;
            return 2.0 * t * std::sqrt(2.0 * (potential(q) - potential(qt)));
        },
        0.0, tmax, 1e-12);
    return theta * potential(qt) + 2.0 * integral;
}

}  // namespace

TEST_CASE("endpoint map q0_of_qt") {
    CHECK(q0_of_qt(0.0, 2.0) == 0.0);
    CHECK(std::abs(q0_of_qt(0.5, 2.0) - 0.31796342449390071751) < 1e-12);
    // small-q_t limit: q0/q_t -> cos(Theta/2)
    CHECK(std::abs(q0_of_qt(1e-9, 2.0) / 1e-9 - std::cos(1.0)) < 1e-9);
    // odd in q_t
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> uq(-0.95, 0.95), uth(0.3, 9.0);
    for (int i = 0; i < 200; ++i) {
        double qt = uq(rng), th = uth(rng);
        CHECK(q0_of_qt(-qt, th) == doctest::Approx(-q0_of_qt(qt, th)).epsilon(1e-14));
    }
    CHECK_THROWS_AS((void)q0_of_qt(1.0, 2.0), std::domain_error);
}

TEST_CASE("q0_of_qt inverse-checks the time-of-flight integral") {
    for (auto [qt, th] : {std::pair{0.5, 2.0}, {0.3, 2.6}, {0.8, 1.4}}) {
        double q0 = q0_of_qt(qt, th);
        REQUIRE(q0 > 0.0);
        REQUIRE(q0 < qt);
        CHECK(std::abs(2.0 * time_of_flight(qt, q0) - th) < 1e-8);
    }
}

TEST_CASE("imaginary turning points reproduce the cn form") {
    // q0(i xi) = i xi cn((Theta/2) sqrt(1+xi^2), xi/sqrt(2(1+xi^2)))
    double th = 2.3;
    for (double xi : {0.4, 1.0, 2.2}) {
        Cx got = q0_of_qt(Cx(0.0, xi), th);
        double u = 0.5 * th * std::sqrt(1.0 + xi * xi);
        double kk = xi / std::sqrt(2.0 * (1.0 + xi * xi));
        Cx want = Cx(0.0, xi) * dw::specfun::jacobi_cn(u, kk);
        CHECK(std::abs(got - want) < 1e-11);
        CHECK(std::abs(got.real()) < 1e-12);  // purely imaginary endpoint
    }
}

TEST_CASE("dq0_dqt: analytic limits and cross-validation") {
    CHECK(std::abs(dq0_dqt(0.0, 2.0) - std::cos(1.0)) < 1e-13);
    CHECK(std::abs(dq0_dqt(0.0, kPi)) < 1e-13);  // cusp condition
    CHECK(std::abs(dq0_dqt(0.3, 4.0) - (-0.2316664502229693336)) < 1e-10);
    CHECK(std::abs(dq0_dqt(0.5, 2.0) - 0.83739831961894319333) < 1e-10);
    // complex-step vs Richardson central difference (real axis)
    for (double qt : {0.2, 0.55, 0.85}) {
        double cs = dq0_dqt(qt, 4.0);
        Cx rich = dq0_dqt(Cx(qt, 1e-30), 4.0);  // routes through the real path
        double h = 1e-5;
        double fd = (q0_of_qt(qt + h, 4.0) - q0_of_qt(qt - h, 4.0)) / (2.0 * h);
        double fd2 = (q0_of_qt(qt + h / 2, 4.0) - q0_of_qt(qt - h / 2, 4.0)) / h;
        double richardson = (4.0 * fd2 - fd) / 3.0;
        CHECK(std::abs(cs - richardson) < 1e-8);
        CHECK(std::abs(cs - rich.real()) < 1e-8);
    }
}

TEST_CASE("real turning points: counts, kinds, residuals") {
    auto one = find_real_turning_points(0.0, 2.0);
    REQUIRE(one.size() == 1);
    CHECK(one[0].q_t == Cx(0.0));
    CHECK(one[0].kind == Kind::GlobalMin);

    auto three = find_real_turning_points(0.0, 4.5);
    REQUIRE(three.size() == 3);
    CHECK(std::abs(three[0].q_t.real() + three[2].q_t.real()) < 1e-12);
    CHECK(std::abs(three[1].q_t.real()) < 1e-12);
    CHECK(three[0].kind == Kind::GlobalMin);  // tie broken toward positive q_t
    CHECK(three[2].kind == Kind::LocalMin);
    CHECK(three[1].kind == Kind::Saddle);

    auto sols = find_real_turning_points(0.2, 5.0);
    REQUIRE(sols.size() == 3);
    CHECK(std::abs(sols[0].q_t.real() - 0.91855256944258037893) < 1e-10);
    CHECK(std::abs(sols[1].q_t.real() - (-0.26204463069717507254)) < 1e-10);
    CHECK(std::abs(sols[2].q_t.real() - (-0.78986660731062314687)) < 1e-10);
    CHECK(sols[0].kind == Kind::GlobalMin);
    CHECK(sols[1].kind == Kind::Saddle);
    CHECK(sols[1].saddle_order == 1);
    CHECK(sols[2].kind == Kind::LocalMin);
    for (const auto& s : sols)
        CHECK(std::abs(q0_of_qt(s.q_t.real(), 5.0) - 0.2) < 1e-12);
}

TEST_CASE("parity of the solution set") {
    for (auto [q0, th] : {std::pair{0.2, 5.0}, {0.35, 6.5}, {0.05, 7.1}}) {
        auto plus = find_real_turning_points(q0, th);
        auto minus = find_real_turning_points(-q0, th);
        REQUIRE(plus.size() == minus.size());
        for (std::size_t i = 0; i < plus.size(); ++i) {
            CHECK(std::abs(plus[i].q_t.real() + minus[minus.size() - 1 - i].q_t.real()) < 1e-12);
            CHECK(std::abs(plus[i].action_I.real() -
                           minus[minus.size() - 1 - i].action_I.real()) < 1e-11);
        }
    }
}

TEST_CASE("action: exact value, frozen point, dual routes") {
    CHECK(action_closed_form(0.0, 0.0, 3.7) == doctest::Approx(3.7 / 4).epsilon(1e-15));
    double th = 3.3086247499973928143;  // Theta matched to (0.7, 0.2)
    CHECK(std::abs(action_closed_form(0.7, 0.2, th) - 0.61668302962406991675) < 1e-12);
    CHECK(std::abs(action(Cx(0.7), 0.2, th).real() - 0.61668302962406991675) < 1e-12);

    // closed form vs segment quadrature vs trajectory quadrature;
    // the bare closed form only covers a monotonic half-path (u <= 2K),
    // action_real extends it by full-sweep reduction
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> uth(0.6, 8.0), uq(-0.97, 0.97);
    int tested = 0, multi = 0;
    while (tested < 100) {
        double th2 = uth(rng), qt = std::abs(uq(rng));
        if (qt < 0.05) continue;
        double q0 = q0_of_qt(qt, th2);
        if (std::abs(q0) >= qt) continue;
        double general = action_real(qt, q0, th2);
        Cx quad = action_quadrature(Cx(qt), th2);
        CHECK(std::abs(general - quad.real()) < 1e-7 * std::max(1.0, std::abs(general)));
        double u = 0.5 * th2 * std::sqrt(1.0 - 0.5 * qt * qt);
        double K = dw::specfun::legendre_K(qt / std::sqrt(2.0 - qt * qt));
        if (u <= 2.0 * K) {
            double closed = action_closed_form(qt, q0, th2);
            double seg = action_segment(qt, q0, th2);
            CHECK(std::abs(closed - seg) < 1e-7 * std::max(1.0, std::abs(closed)));
            CHECK(std::abs(closed - general) < 1e-12);
        } else {
            ++multi;
        }
        ++tested;
    }
    CHECK(multi > 0);  // the sample actually exercises deep branches

    // sign-flip region q0 < 0 (paper's minus-sign caution)
    double qt = 0.6, q0n = -0.45, th3 = 4.0;
    CHECK(std::abs(action_closed_form(qt, q0n, th3) - action_segment(qt, q0n, th3)) < 1e-9);
    CHECK_THROWS_AS((void)action(Cx(0.7), 0.5, 2.0), std::invalid_argument);
}

TEST_CASE("action conjugation symmetry") {
    for (auto [q0, th] : {std::pair{0.3, 2.5}, {0.1, 2.9}}) {
        auto pair = find_complex_pair(q0, th);
        Cx a = pair.first.action_I, b = pair.second.action_I;
        CHECK(std::abs(a - std::conj(b)) < 1e-10);
    }
}

TEST_CASE("fluctuation determinant") {
    CHECK(std::abs(fluct_det(0.0, 0.0, 2.0, 0.3) - 2.0 * kPi * 0.3 * std::sin(2.0)) < 1e-14);
    double th = 3.3086247499973928143;
    CHECK(std::abs(fluct_det(0.7, 0.2, th, 0.3) - 7.3968084707242528737) < 1e-8);
    // saddle at q0=0 for pi < Theta < 2 pi has negative determinant
    CHECK(fluct_det(0.0, 0.0, 4.0, 0.3) < 0.0);
    // vanishes at the fold
    auto folds = fold_points(5.0);
    REQUIRE(!folds.empty());
    double qt_f = folds.back();
    double q0_f = q0_of_qt(qt_f, 5.0);
    CHECK(std::abs(fluct_det(qt_f, q0_f, 5.0, 0.3)) < 1e-6);
}

TEST_CASE("fold structure near the caustic: quadratic coalescence") {
    double th = 5.0;
    double qt_f = fold_points(th).back();
    double q0_f = q0_of_qt(qt_f, th);
    std::vector<double> lx, ly;
    for (double d : {1e-4, 3e-4, 1e-3, 3e-3}) {
        lx.push_back(std::log(d));
        ly.push_back(std::log(std::abs(q0_of_qt(qt_f + d, th) - q0_f)));
    }
    double n = lx.size(), sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sx += lx[i];
        sy += ly[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * ly[i];
    }
    double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    CHECK(std::abs(slope - 2.0) < 0.05);
}

TEST_CASE("imaginary-axis roots and the complex pair at q0=0") {
    CHECK(std::abs(imaginary_axis_root(2.0) - 1.4168058540825052145) < 1e-11);
    // pair collapses toward the origin as Theta -> pi-
    CHECK(imaginary_axis_root(3.14) < 0.07);
    CHECK(imaginary_axis_root(2.9) > imaginary_axis_root(3.1));

    auto pair = find_complex_pair(0.0, 2.0);
    CHECK(std::abs(pair.first.q_t - Cx(0.0, 1.4168058540825052145)) < 1e-10);
    CHECK(std::abs(pair.second.q_t - std::conj(pair.first.q_t)) < 1e-14);
    CHECK(std::abs(pair.first.action_I - Cx(-0.20545931190989914494)) < 1e-10);
    CHECK(std::abs(pair.first.action_I.imag()) < 1e-11);  // real on the imaginary axis
}

TEST_CASE("complex pair off axis: frozen point and residuals") {
    auto pair = find_complex_pair(0.4, 3.0);
    CHECK(std::abs(pair.first.q_t - Cx(-0.50428995080329164591, 0.82872408111022939979)) < 1e-9);
    CHECK(std::abs(pair.first.action_I -
                   Cx(1.0942062292155116174, -0.54753986182832268377)) < 1e-9);
    CHECK(std::abs(q0_of_qt(pair.first.q_t, 3.0) - 0.4) < 1e-10);

    // continuation from the fold side (Theta > pi)
    auto pair5 = find_complex_pair(0.5, 5.0);
    CHECK(pair5.first.q_t.imag() > 0.0);
    CHECK(pair5.first.q_t.real() < 0.0);  // continues the coalescing pair
    CHECK(std::abs(q0_of_qt(pair5.first.q_t, 5.0) - 0.5) < 1e-10);

    // parity image
    auto pm = find_complex_pair(-0.4, 3.0);
    CHECK(std::abs(pm.first.q_t - (-std::conj(pair.first.q_t))) < 1e-9);

    CHECK_THROWS_AS((void)find_complex_pair(0.1, 5.0), std::domain_error);  // 3-solution region
}

TEST_CASE("periodic saddle") {
    CHECK(std::abs(periodic_amplitude(7.0) - 0.50649754989142751655) < 1e-11);
    CHECK(periodic_amplitude(2.0 * kPi) == 0.0);
    CHECK(periodic_amplitude(9.0) > periodic_amplitude(7.0));
    // half-period identity: q0(A) = -A
    double amp = periodic_amplitude(7.0);
    CHECK(std::abs(q0_of_qt(amp, 7.0) + amp) < 1e-10);

    auto ps = periodic_saddle(0.1, 7.0);
    CHECK(std::abs(ps.action_I.real() - 1.7056565752887412904) < 1e-11);
    CHECK(ps.saddle_order == 1);
    // action agrees with the trajectory quadrature for the same representative
    CHECK(std::abs(action_quadrature(Cx(amp), 7.0).real() - ps.action_I.real()) < 1e-9);
    CHECK_THROWS_AS((void)periodic_saddle(0.9, 7.0), std::domain_error);
    CHECK_THROWS_AS((void)periodic_saddle(0.1, 5.0), std::domain_error);
}

TEST_CASE("solution counts and kinds across regions") {
    // (0.1, 7.0): three cd-roots plus the periodic pair
    auto sols = find_real_turning_points(0.1, 7.0);
    CHECK(sols.size() == 3);
    CHECK(total_solution_count(0.1, 7.0) == 5);
    // interior cd-root is labeled a two-saddle there
    for (const auto& s : sols)
        if (s.kind == Kind::Saddle) CHECK(s.saddle_order == 2);
    auto all = solution_set(0.1, 7.0);
    CHECK(all.size() == 5);
    int n_periodic = 0;
    for (const auto& s : all)
        if (s.branch_index == -1) {
            ++n_periodic;
            CHECK(s.saddle_order == 1);
        }
    CHECK(n_periodic == 2);
    // the periodic pair shares one action (time reversal)
    CHECK(all[3].action_I.real() == all[4].action_I.real());

    CHECK(total_solution_count(0.6, 7.0) == 3);  // outside A but inside the fold
    CHECK(total_solution_count(0.7, 7.0) == 1);  // outside the fold at 0.6731
}
