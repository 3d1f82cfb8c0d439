#include "doublewell/trajectories.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>

#include "doublewell/elliptic.hpp"
#include "doublewell/quadrature.hpp"
#include "doublewell/tuning.hpp"

namespace dw::traj {

namespace sf = dw::specfun;

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kEdge = 1e-9;  // offset from the separatrix |q_t| = 1

double sgn(double x) { return (x > 0) - (x < 0); }

// Bisection on a sign change; f(lo) and f(hi) must have opposite signs.
template <class F>
double bisect(F&& f, double lo, double hi, double flo) {
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0) == (flo > 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

struct UK {
    double u, k;
};
UK uk_real(double q_t, double theta) {
    double nu = std::sqrt(1.0 - 0.5 * q_t * q_t);
    double k = std::abs(q_t) / std::sqrt(2.0 - q_t * q_t);
    return {0.5 * theta * nu, k};
}

}  // namespace

double q0_of_qt(double q_t, double theta) {
    if (theta <= 0.0) throw std::domain_error("q0_of_qt: Theta must be positive");
    if (std::abs(q_t) >= 1.0) throw std::domain_error("q0_of_qt: |q_t| >= 1 (separatrix)");
    if (q_t == 0.0) return 0.0;
    auto [u, k] = uk_real(q_t, theta);
    return q_t * sf::jacobi_cd(u, k);
}

Complex q0_of_qt(const Complex& q_t, double theta) {
    if (theta <= 0.0) throw std::domain_error("q0_of_qt: Theta must be positive");
    if (q_t.imag() == 0.0 && std::abs(q_t.real()) >= 1.0 && std::abs(q_t.real()) <= M_SQRT2)
        throw std::domain_error("q0_of_qt: real q_t past the separatrix");
    if (q_t == 0.0) return 0.0;
    Complex nu = std::sqrt(1.0 - 0.5 * q_t * q_t);
    Complex k = std::sqrt(q_t * q_t / (2.0 - q_t * q_t));
    return q_t * sf::jacobi_cd(0.5 * theta * nu, k);
}

double dq0_dqt(double q_t, double theta) {
    // complex step: exact to machine precision, no cancellation
    constexpr double h = 1e-100;
    return q0_of_qt(Complex(q_t, h), theta).imag() / h;
}

Complex dq0_dqt(const Complex& q_t, double theta) {
    if (q_t.imag() == 0.0) return dq0_dqt(q_t.real(), theta);
    double h = 1e-4 * std::max(1.0, std::abs(q_t));
    auto central = [&](double hh) {
        return (q0_of_qt(q_t + hh, theta) - q0_of_qt(q_t - hh, theta)) / (2.0 * hh);
    };
    Complex d1 = central(h), d2 = central(0.5 * h);
    return (4.0 * d2 - d1) / 3.0;
}

namespace {

// fold_points is hit once per Theta by every root enumeration on that row;
// grid sweeps reuse the same Theta thousands of times.
std::map<double, std::vector<double>> g_fold_cache;
std::mutex g_fold_mutex;

std::vector<double> fold_points_uncached(double theta) {
    std::vector<double> zs;
    std::vector<double> xs;
    // geometric samples resolve folds emerging from the cusp at q_t ~ 0
    for (double x = 1e-7; x < 1e-3; x *= 1.7) xs.push_back(x);
    int n = 800;
    for (int i = 0; i <= n; ++i) {
        double t = static_cast<double>(i) / n;
        xs.push_back(1e-3 + t * (1.0 - kEdge - 1e-3));
    }
    double prev = dq0_dqt(xs[0], theta);
    for (std::size_t i = 1; i < xs.size(); ++i) {
        double cur = dq0_dqt(xs[i], theta);
        if (prev == 0.0) zs.push_back(xs[i - 1]);
        else if ((prev > 0) != (cur > 0))
            zs.push_back(bisect([&](double x) { return dq0_dqt(x, theta); }, xs[i - 1], xs[i], prev));
        prev = cur;
    }
    return zs;
}

}  // namespace

std::vector<double> fold_points(double theta) {
    {
        std::lock_guard lock(g_fold_mutex);
        auto it = g_fold_cache.find(theta);
        if (it != g_fold_cache.end()) return it->second;
    }
    auto zs = fold_points_uncached(theta);
    std::lock_guard lock(g_fold_mutex);
    if (g_fold_cache.size() > 4096) g_fold_cache.clear();
    g_fold_cache.emplace(theta, zs);
    return zs;
}

double imaginary_axis_root(double theta, int j) {
    if (j < 1) throw std::domain_error("imaginary_axis_root: j >= 1");
    double target = (2 * j - 1);
    if (theta >= target * kPi)
        throw std::domain_error("imaginary_axis_root: zero has moved onto the real axis");
    auto h = [&](double xi) {
        double k = xi / std::sqrt(2.0 * (1.0 + xi * xi));
        return 0.5 * theta * std::sqrt(1.0 + xi * xi) - target * sf::legendre_K(k);
    };
    double lo = 0.0, hi = 1.0;
    while (h(hi) < 0.0) {
        hi *= 2.0;
        if (hi > 1e6) throw std::runtime_error("imaginary_axis_root: no bracket");
    }
    return bisect(h, lo, hi, h(lo));
}

double periodic_amplitude(double theta, int m) {
    if (m < 1) throw std::domain_error("periodic_amplitude: m >= 1");
    if (theta < 2.0 * m * kPi)
        throw std::domain_error("periodic_amplitude: Theta below 2*m*pi");
    if (theta == 2.0 * m * kPi) return 0.0;
    auto h = [&](double q_t) {
        auto [u, k] = uk_real(q_t, theta);
        return u - 2.0 * m * sf::legendre_K(k);
    };
    double lo = 0.0, flo = 0.5 * theta - m * kPi;  // h(0) > 0 here
    return bisect(h, lo, 1.0 - kEdge, flo);
}

double action_closed_form(double q_t, double q0, double theta) {
    if (q_t < 0.0) {
        q_t = -q_t;
        q0 = -q0;
    }
    if (q_t < 1e-14) return 0.25 * theta;
    if (q_t >= 1.0) throw std::domain_error("action_closed_form: |q_t| >= 1");
    if (std::abs(q0) > q_t * (1.0 + 1e-12))
        throw std::domain_error("action_closed_form: endpoint outside turning points");
    double k = q_t / std::sqrt(2.0 - q_t * q_t);
    double s = std::clamp(q0 / q_t, -1.0, 1.0);
    double phi = std::asin(s);
    double q02 = q0 * q0, qt2 = q_t * q_t;
    double rad = 2.0 * q02 * (qt2 - q02) * (2.0 - qt2 - q02);
    double t1 = sgn(q0) * std::sqrt(std::max(0.0, rad)) / 3.0;
    double K = sf::legendre_K(k), E = sf::legendre_E(k);
    double F = sf::legendre_F(phi, k), Ei = sf::legendre_E_inc(phi, k);
    double t2 = (2.0 / 3.0) * std::sqrt(2.0 * (2.0 - qt2)) * ((1.0 - qt2) * (K - F) - E + Ei);
    return theta * potential(q_t) - t1 - t2;
}

// I(i xi_1, Theta) - Theta/4 at q0 = 0, Theta < pi, in a split form that
// avoids differencing two O(1) actions (the gap shrinks like xi^4 near the
// cusp where the naive subtraction drowns in rounding noise).
double imaginary_pair_action_gap(double theta) {
    double xi = imaginary_axis_root(theta);
    double x2 = xi * xi;
    double lead = 0.25 * theta * x2 * (2.0 + x2);
    // sqrt(2) * int_0^xi sqrt((1+xi^2)^2 - (1+t^2)^2) dt, t = xi sin(psi)
    double integral = dw::integrate(
        [&](double psi) {
            double sp = std::sin(psi), cp = std::cos(psi);
            return cp * cp * std::sqrt(2.0 + x2 * (1.0 + sp * sp));
        },
        0.0, 1.57079632679489661923, 1e-14);
    return lead - M_SQRT2 * x2 * integral;
}

// I_saddle - I_gm = Theta/4 - I(A0) at q0 = 0, Theta > pi, same split form.
double symmetric_minimum_action_gap(double theta) {
    auto h = [&](double q_t) {
        auto [u, k] = uk_real(q_t, theta);
        return u - sf::legendre_K(k);
    };
    double amp = bisect(h, 0.0, 1.0 - kEdge, 0.5 * theta - 0.5 * kPi);  // cd zero: u = K
    double a2 = amp * amp;
    double lead = 0.25 * theta * a2 * (2.0 - a2);
    double integral = dw::integrate(
        [&](double psi) {
            double sp = std::sin(psi), cp = std::cos(psi);
            return cp * cp * std::sqrt(0.5 * (2.0 - a2 * (1.0 + sp * sp)));
        },
        0.0, 1.57079632679489661923, 1e-14);
    return lead - 2.0 * a2 * integral;
}

double action_real(double q_t, double q0, double theta) {
    if (q_t < 0.0) {
        q_t = -q_t;
        q0 = -q0;
    }
    if (q_t < 1e-14) return 0.25 * theta;
    auto [u, k] = uk_real(q_t, theta);
    double K = sf::legendre_K(k);
    double theta_u = theta * potential(q_t);
    // the half-trajectory spans u in cd-phase; every 2K is one full sweep
    int m = static_cast<int>(std::floor(u / (2.0 * K) * (1.0 + 1e-14)));
    double s_part = 0.5 * (action_closed_form(q_t, q0, theta) - theta_u);
    if (m == 0) return theta_u + 2.0 * s_part;
    double full = 0.5 * (action_closed_form(q_t, -q_t, theta) - theta_u);
    double partial = (m % 2 == 0) ? s_part : full - s_part;
    return theta_u + 2.0 * (m * full + partial);
}

Complex action_quadrature(const Complex& q_t, double theta) {
    if (q_t == 0.0) return Complex(0.25 * theta);
    Complex nu = std::sqrt(1.0 - 0.5 * q_t * q_t);
    Complex k = std::sqrt(q_t * q_t / (2.0 - q_t * q_t));
    Complex om = 1.0 - k * k;
    auto f = [&](double s) {
        auto j = sf::jacobi_elliptic(nu * s, k);
        Complex q = q_t * j.cn / j.dn;
        Complex qd = -q_t * nu * om * j.sn / (j.dn * j.dn);
        return 0.5 * qd * qd + potential(q);
    };
    // pre-split at quarter-period scale: the integrand oscillates and a
    // single adaptive pass can terminate on cancelling panels
    double quarter = 0.5 * std::abs(sf::legendre_K(k)) / std::max(1e-12, std::abs(nu));
    double h = std::min(1.0, quarter);
    int pieces = std::max(2, static_cast<int>(std::ceil(0.5 * theta / h)));
    Complex total = 0.0;
    for (int i = 0; i < pieces; ++i) {
        double a = 0.5 * theta * i / pieces;
        double b = 0.5 * theta * (i + 1) / pieces;
        total += integrate_c(f, a, b);
    }
    return 2.0 * total;
}

Complex action(const Complex& q_t, double q0, double theta) {
    Complex resid = q0_of_qt(q_t, theta) - q0;
    if (std::abs(resid) > 1e-9 * (1.0 + std::abs(q0)))
        throw std::invalid_argument("action: (q_t,q0,Theta) violate the endpoint map");
    if (q_t.imag() == 0.0) return Complex(action_real(q_t.real(), q0, theta));
    return action_quadrature(q_t, theta);
}

double fluct_det(double q_t, double q0, double theta, double g) {
    if (g <= 0.0) throw std::domain_error("fluct_det: g must be positive");
    if (std::abs(q_t) < 1e-12 && std::abs(q0) < 1e-12)
        return 2.0 * kPi * g * std::sin(theta);  // q_t -> 0 limit
    double du = potential(q0) - potential(q_t);
    double root = std::sqrt(std::max(0.0, 2.0 * du));
    return 4.0 * kPi * g * sgn(q0 - q_t) * root / potential_prime(q_t) * dq0_dqt(q_t, theta);
}

namespace {

TrajectorySolution make_real_solution(double root, double q0, double theta, double g_unused,
                                      int branch) {
    (void)g_unused;
    TrajectorySolution s;
    s.q_t = root;
    s.q0 = q0;
    s.action_I = action_real(root, q0, theta);
    s.det_delta = std::numeric_limits<double>::quiet_NaN();
    s.kind = Kind::Saddle;
    s.saddle_order = 0;
    s.branch_index = branch;
    return s;
}

// roots of q0_of_qt(.,theta) = 0: the origin plus the cd zeros u = (2j+1)K
std::vector<double> roots_at_zero(double theta) {
    std::vector<double> roots{0.0};
    for (int j = 0;; ++j) {
        double odd = 2 * j + 1;
        if (theta <= odd * kPi) break;
        auto h = [&](double q_t) {
            auto [u, k] = uk_real(q_t, theta);
            return u - odd * sf::legendre_K(k);
        };
        double r = bisect(h, 0.0, 1.0 - kEdge, 0.5 * theta - odd * 0.5 * kPi);
        roots.push_back(r);
        roots.push_back(-r);
    }
    return roots;
}

}  // namespace

std::vector<TrajectorySolution> find_real_turning_points(double q0, double theta) {
    if (std::abs(q0) >= 1.0) throw std::domain_error("find_real_turning_points: |q0| >= 1");

    std::vector<double> roots;
    std::vector<int> branches;
    auto folds = fold_points(theta);
    std::vector<double> pts;
    pts.push_back(-(1.0 - kEdge));
    for (auto it = folds.rbegin(); it != folds.rend(); ++it) pts.push_back(-*it);
    for (double f : folds) pts.push_back(f);
    pts.push_back(1.0 - kEdge);

    if (q0 == 0.0) {
        roots = roots_at_zero(theta);
        std::sort(roots.begin(), roots.end());
        for (double r : roots) {
            int b = 0;
            while (b + 1 < static_cast<int>(pts.size()) && r > pts[b + 1]) ++b;
            branches.push_back(b);
        }
    } else {
        for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
            double a = pts[i], b = pts[i + 1];
            double fa = q0_of_qt(a, theta) - q0;
            double fb = q0_of_qt(b, theta) - q0;
            if (fa == 0.0) {
                roots.push_back(a);
                branches.push_back(static_cast<int>(i));
                continue;
            }
            if ((fa > 0) != (fb > 0)) {
                double r = bisect([&](double x) { return q0_of_qt(x, theta) - q0; }, a, b, fa);
                roots.push_back(r);
                branches.push_back(static_cast<int>(i));
            }
        }
    }

    std::vector<TrajectorySolution> sols;
    for (std::size_t i = 0; i < roots.size(); ++i)
        sols.push_back(make_real_solution(roots[i], q0, theta, 0.0, branches[i]));
    std::sort(sols.begin(), sols.end(),
              [](const auto& a, const auto& b) { return a.q_t.real() > b.q_t.real(); });

    if (sols.size() == 1) {
        sols[0].kind = Kind::GlobalMin;
    } else if (!sols.empty()) {
        auto& hi = sols.front();
        auto& lo = sols.back();
        bool hi_is_gm = hi.action_I.real() < lo.action_I.real() ||
                        (hi.action_I.real() == lo.action_I.real());  // tie: positive q_t wins
        hi.kind = hi_is_gm ? Kind::GlobalMin : Kind::LocalMin;
        lo.kind = hi_is_gm ? Kind::LocalMin : Kind::GlobalMin;

        int base = 1;
        if (theta > 2.0 * kPi && std::abs(q0) < periodic_amplitude(theta))
            base = 2;  // the one-saddles are the periodic pair
        std::vector<std::size_t> interior;
        for (std::size_t i = 1; i + 1 < sols.size(); ++i) interior.push_back(i);
        std::sort(interior.begin(), interior.end(), [&](std::size_t a, std::size_t b) {
            return sols[a].action_I.real() < sols[b].action_I.real();
        });
        int order = base;
        for (std::size_t idx : interior) {
            sols[idx].kind = Kind::Saddle;
            sols[idx].saddle_order = order++;
        }
    }
    return sols;
}

namespace {

Complex newton_refine(Complex q_t, double target, double theta, bool& ok) {
    ok = false;
    for (int it = 0; it < 16; ++it) {
        Complex r = q0_of_qt(q_t, theta) - target;
        if (std::abs(r) < dw::tuning::root_tol.load() * (1.0 + std::abs(target))) {
            ok = true;
            return q_t;
        }
        double h = 1e-7 * (1.0 + std::abs(q_t));
        Complex der = (q0_of_qt(q_t + h, theta) - q0_of_qt(q_t - h, theta)) / (2.0 * h);
        if (der == 0.0) return q_t;
        q_t -= r / der;
    }
    return q_t;
}

TrajectorySolution make_complex_solution(const Complex& q_t, double q0, double theta) {
    TrajectorySolution s;
    s.q_t = q_t;
    s.q0 = q0;
    s.action_I = action_quadrature(q_t, theta);
    s.det_delta = std::numeric_limits<double>::quiet_NaN();
    s.kind = Kind::ComplexPair;
    s.saddle_order = 0;
    s.branch_index = -1;
    return s;
}

}  // namespace

std::pair<TrajectorySolution, TrajectorySolution> find_complex_pair(double q0, double theta) {
    double q0a = std::abs(q0);
    if (q0a >= 1.0) throw std::domain_error("find_complex_pair: |q0| >= 1");

    auto folds = fold_points(theta);
    double qstar = folds.empty() ? 0.0 : std::abs(q0_of_qt(folds.back(), theta));
    if (!folds.empty() && q0a <= qstar * (1.0 + 1e-9) + 1e-15)
        throw std::domain_error("find_complex_pair: point not in the one-solution region");

    Complex q_t;
    double cur;
    if (theta < kPi - 1e-2 || q0a == 0.0) {
        if (theta >= kPi)
            throw std::domain_error("find_complex_pair: q0=0 with Theta >= pi has real pairs");
        q_t = Complex(0.0, imaginary_axis_root(theta));
        cur = 0.0;
    } else if (theta > kPi + 1e-2) {
        double qtf = folds.back();
        double h = 1e-5;
        double c2 =
            (q0_of_qt(-qtf + h, theta) - 2.0 * q0_of_qt(-qtf, theta) + q0_of_qt(-qtf - h, theta)) /
            (h * h);
        cur = qstar + std::min(1e-3, std::max(1e-6, 0.5 * (q0a - qstar)));
        q_t = Complex(-qtf, std::sqrt(2.0 * (cur - qstar) / std::abs(c2)));
        bool ok;
        q_t = newton_refine(q_t, cur, theta, ok);
        if (!ok) throw std::runtime_error("find_complex_pair: fold seed failed");
    } else {
        // cusp zone: seed from the cubic normal form c1 x + c3 x^3 = q0
        double c1 = dq0_dqt(0.0, theta);
        double hs = 0.05;
        double c3 = (q0_of_qt(hs, theta) - c1 * hs) / (hs * hs * hs);
        cur = std::min(q0a, 0.02);
        double r = std::cbrt(cur / c3);  // near-real root scale
        for (int it = 0; it < 60; ++it)
            r -= (c1 * r + c3 * r * r * r - cur) / (c1 + 3.0 * c3 * r * r);
        double disc = 3.0 * r * r + 4.0 * c1 / c3;
        if (disc < 0.0) throw std::runtime_error("find_complex_pair: cusp seed not complex");
        q_t = Complex(-0.5 * r, 0.5 * std::sqrt(disc));
        bool ok;
        q_t = newton_refine(q_t, cur, theta, ok);
        if (!ok) throw std::runtime_error("find_complex_pair: cusp seed failed");
    }

    double step = 1e-3;
    while (cur < q0a) {
        double tgt = std::min(q0a, cur + step);
        bool ok;
        Complex qn = newton_refine(q_t, tgt, theta, ok);
        if (ok && std::abs(qn.imag()) > 1e-13) {
            q_t = qn;
            cur = tgt;
            step = std::min(step * 1.6, 2e-2);
        } else {
            step *= 0.5;
            if (step < 1e-12)
                throw std::runtime_error("find_complex_pair: continuation stalled");
        }
    }
    if (cur != q0a) {  // seed landed at or past the target; polish onto it
        bool ok;
        Complex qn = newton_refine(q_t, q0a, theta, ok);
        if (!ok || std::abs(qn.imag()) < 1e-13)
            throw std::runtime_error("find_complex_pair: refinement to target failed");
        q_t = qn;
    }
    if (q0 < 0.0) q_t = -std::conj(q_t);  // parity image, keep Im > 0
    if (q_t.imag() < 0.0) q_t = std::conj(q_t);

    auto first = make_complex_solution(q_t, q0, theta);
    auto second = make_complex_solution(std::conj(q_t), q0, theta);
    return {first, second};
}

TrajectorySolution periodic_saddle(double q0, double theta) {
    if (theta < 2.0 * kPi) throw std::domain_error("periodic_saddle: Theta < 2*pi");
    double amp = periodic_amplitude(theta);
    if (std::abs(q0) >= amp && theta > 2.0 * kPi)
        throw std::domain_error("periodic_saddle: |q0| >= A(Theta)");
    TrajectorySolution s;
    s.q_t = amp;
    s.q0 = -amp;  // representative with q_t = -q0; the action is phase-independent
    s.action_I = action_closed_form(amp, -amp, theta);
    s.det_delta = std::numeric_limits<double>::quiet_NaN();
    s.kind = Kind::Saddle;
    s.saddle_order = 1;
    s.branch_index = -1;
    return s;
}

std::vector<TrajectorySolution> solution_set(double q0, double theta) {
    auto sols = find_real_turning_points(q0, theta);
    for (int m = 1; theta > 2.0 * m * kPi; ++m) {
        double amp = periodic_amplitude(theta, m);
        if (std::abs(q0) < amp) {
            TrajectorySolution s;
            s.q_t = amp;
            s.q0 = -amp;
            s.action_I = action_closed_form(amp, -amp, theta);
            s.det_delta = std::numeric_limits<double>::quiet_NaN();
            s.kind = Kind::Saddle;
            s.saddle_order = 2 * m - 1;
            s.branch_index = -1;
            sols.push_back(s);
            s.q_t = -amp;
            s.q0 = amp;
            sols.push_back(s);
        }
    }
    return sols;
}

int total_solution_count(double q0, double theta) {
    return static_cast<int>(solution_set(q0, theta).size());
}

}  // namespace dw::traj
