#include "doublewell/elliptic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dw::specfun {

namespace {

// Series truncation error is O(errtol^6) ~ 1e-18 after the duplication loop.
constexpr double kErrtol = 1e-3;
constexpr int kMaxIter = 80;

void check_modulus(const Complex& k) {
    Complex m = k * k;
    if (m.imag() == 0.0 && m.real() >= 1.0)
        throw std::domain_error("elliptic: k^2 on the branch cut [1,inf)");
}

}  // namespace

Complex carlson_rf(Complex x, Complex y, Complex z) {
    int nzero = (x == 0.0) + (y == 0.0) + (z == 0.0);
    if (nzero >= 2) throw std::domain_error("carlson_rf: two or more arguments zero");
    Complex mu;
    for (int it = 0; it < kMaxIter; ++it) {
        Complex sx = std::sqrt(x), sy = std::sqrt(y), sz = std::sqrt(z);
        Complex lam = sx * sy + sy * sz + sz * sx;
        x = 0.25 * (x + lam);
        y = 0.25 * (y + lam);
        z = 0.25 * (z + lam);
        mu = (x + y + z) / 3.0;
        double e = std::max({std::abs(x - mu), std::abs(y - mu), std::abs(z - mu)}) / std::abs(mu);
        if (e < kErrtol) break;
    }
    Complex dx = 1.0 - x / mu, dy = 1.0 - y / mu;
    Complex dz = -(dx + dy);
    Complex e2 = dx * dy - dz * dz;
    Complex e3 = dx * dy * dz;
    return (1.0 + (e2 / 24.0 - 0.1 - 3.0 * e3 / 44.0) * e2 + e3 / 14.0) / std::sqrt(mu);
}

Complex carlson_rd(Complex x, Complex y, Complex z) {
    if (z == 0.0) throw std::domain_error("carlson_rd: z must be nonzero");
    if (x == 0.0 && y == 0.0) throw std::domain_error("carlson_rd: x and y both zero");
    Complex sum = 0.0;
    double fac = 1.0;
    Complex mu;
    for (int it = 0; it < kMaxIter; ++it) {
        Complex sx = std::sqrt(x), sy = std::sqrt(y), sz = std::sqrt(z);
        Complex lam = sx * sy + sy * sz + sz * sx;
        sum += fac / (sz * (z + lam));
        fac *= 0.25;
        x = 0.25 * (x + lam);
        y = 0.25 * (y + lam);
        z = 0.25 * (z + lam);
        mu = 0.2 * (x + y + 3.0 * z);
        double e = std::max({std::abs(x - mu), std::abs(y - mu), std::abs(z - mu)}) / std::abs(mu);
        if (e < kErrtol) break;
    }
    constexpr double c1 = 3.0 / 14.0, c2 = 1.0 / 6.0, c3 = 9.0 / 22.0, c4 = 3.0 / 26.0;
    constexpr double c5 = 0.25 * c3, c6 = 1.5 * c4;
    Complex dx = (mu - x) / mu, dy = (mu - y) / mu, dz = (mu - z) / mu;
    Complex ea = dx * dy, eb = dz * dz, ec = ea - eb, ed = ea - 6.0 * eb, ee = ed + ec + ec;
    Complex tail = 1.0 + ed * (-c1 + c5 * ed - c6 * dz * ee) +
                   dz * (c2 * ee + dz * (-c3 * ec + dz * c4 * ea));
    return 3.0 * sum + fac * tail / (mu * std::sqrt(mu));
}

Complex legendre_K(Complex k) {
    check_modulus(k);
    Complex m = k * k;
    if (m == 1.0) throw std::domain_error("legendre_K: logarithmic singularity at k=1");
    return carlson_rf(0.0, 1.0 - m, 1.0);
}

Complex legendre_E(Complex k) {
    Complex m = k * k;
    if (m == 1.0) return 1.0;
    check_modulus(k);
    return carlson_rf(0.0, 1.0 - m, 1.0) - m / 3.0 * carlson_rd(0.0, 1.0 - m, 1.0);
}

namespace {

// Principal piece, |Re phi| <= pi/2.
Complex f_principal(const Complex& phi, const Complex& m) {
    Complex s = std::sin(phi), c = std::cos(phi);
    return s * carlson_rf(c * c, 1.0 - m * s * s, 1.0);
}

Complex e_principal(const Complex& phi, const Complex& m) {
    Complex s = std::sin(phi), c = std::cos(phi);
    Complex s3 = s * s * s;
    return s * carlson_rf(c * c, 1.0 - m * s * s, 1.0) -
           m / 3.0 * s3 * carlson_rd(c * c, 1.0 - m * s * s, 1.0);
}

constexpr double kHalfPi = 1.57079632679489661923;

}  // namespace

Complex legendre_F(Complex phi, Complex k) {
    check_modulus(k);
    Complex m = k * k;
    if (phi.imag() == 0.0 && std::abs(phi.real()) > kHalfPi) {
        // quasi-periodic reduction for real amplitudes
        double n = std::round(phi.real() / M_PI);
        return 2.0 * n * legendre_K(k) + f_principal(phi - n * M_PI, m);
    }
    if (std::abs(phi.real()) > kHalfPi + 1e-12)
        throw std::domain_error("legendre_F: complex phi outside principal strip");
    return f_principal(phi, m);
}

Complex legendre_E_inc(Complex phi, Complex k) {
    check_modulus(k);
    Complex m = k * k;
    if (phi.imag() == 0.0 && std::abs(phi.real()) > kHalfPi) {
        double n = std::round(phi.real() / M_PI);
        return 2.0 * n * legendre_E(k) + e_principal(phi - n * M_PI, m);
    }
    if (std::abs(phi.real()) > kHalfPi + 1e-12)
        throw std::domain_error("legendre_E_inc: complex phi outside principal strip");
    return e_principal(phi, m);
}

double legendre_K(double k) { return legendre_K(Complex(k)).real(); }
double legendre_E(double k) { return legendre_E(Complex(k)).real(); }
double legendre_F(double phi, double k) { return legendre_F(Complex(phi), Complex(k)).real(); }
double legendre_E_inc(double phi, double k) {
    return legendre_E_inc(Complex(phi), Complex(k)).real();
}

namespace {

// Descending Landen step: k -> k1 = (1-k')/(1+k') shrinks quadratically, so
// half a dozen levels reach the trigonometric base even from k ~ 0.99.
template <class T>
Jacobi<T> jacobi_impl(const T& u, const T& k, int depth) {
    using std::abs;
    if (abs(k) < 1e-8 || depth >= 32) {
        // A&S 16.13 with the first modulus correction
        T m = k * k;
        T su = std::sin(u), cu = std::cos(u);
        T w = 0.25 * (u - su * cu);
        return {su - m * w * cu, cu + m * w * su, T(1) - 0.5 * m * su * su};
    }
    T kp = std::sqrt(T(1) - k * k);
    T k1 = (T(1) - kp) / (T(1) + kp);
    Jacobi<T> s = jacobi_impl<T>(u / (T(1) + k1), k1, depth + 1);
    T s2 = s.sn * s.sn;
    T den = T(1) + k1 * s2;
    return {(T(1) + k1) * s.sn / den, s.cn * s.dn / den, (T(1) - k1 * s2) / den};
}

}  // namespace

Jacobi<double> jacobi_elliptic(double u, double k) {
    if (std::abs(k) >= 1.0)
        throw std::domain_error("jacobi_elliptic: need |k| < 1 for real modulus");
    return jacobi_impl<double>(u, k, 0);
}

Jacobi<Complex> jacobi_elliptic(const Complex& u, const Complex& k) {
    check_modulus(k);
    if (k.imag() == 0.0 && std::abs(k.real()) == 1.0)
        throw std::domain_error("jacobi_elliptic: |k| = 1");
    return jacobi_impl<Complex>(u, k, 0);
}

}  // namespace dw::specfun
