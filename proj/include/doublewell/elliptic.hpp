#pragma once

#include <complex>

namespace dw::specfun {

using Complex = std::complex<double>;

// Carlson symmetric integrals on the principal branch, complex-capable.
// Computed by the duplication theorem with a fifth-order series tail
// (B. C. Carlson, Numer. Algorithms 10, 13 (1995)).
Complex carlson_rf(Complex x, Complex y, Complex z);
Complex carlson_rd(Complex x, Complex y, Complex z);

// Legendre integrals in terms of the modulus k (parameter m = k^2).
// k = 1 is rejected; the physical regime never reaches the separatrix.
Complex legendre_K(Complex k);
Complex legendre_E(Complex k);
Complex legendre_F(Complex phi, Complex k);
Complex legendre_E_inc(Complex phi, Complex k);
double legendre_K(double k);
double legendre_E(double k);
double legendre_F(double phi, double k);
double legendre_E_inc(double phi, double k);

template <class T>
struct Jacobi {
    T sn, cn, dn;
};

// Jacobi elliptic functions by descending Landen recursion; the same
// recursion runs on real and complex arithmetic (DLMF 22.7.1-3).
Jacobi<double> jacobi_elliptic(double u, double k);
Jacobi<Complex> jacobi_elliptic(const Complex& u, const Complex& k);

inline double jacobi_sn(double u, double k) { return jacobi_elliptic(u, k).sn; }
inline double jacobi_cn(double u, double k) { return jacobi_elliptic(u, k).cn; }
inline double jacobi_dn(double u, double k) { return jacobi_elliptic(u, k).dn; }
inline double jacobi_cd(double u, double k) {
    auto j = jacobi_elliptic(u, k);
    return j.cn / j.dn;
}

inline Complex jacobi_sn(const Complex& u, const Complex& k) { return jacobi_elliptic(u, k).sn; }
inline Complex jacobi_cn(const Complex& u, const Complex& k) { return jacobi_elliptic(u, k).cn; }
inline Complex jacobi_dn(const Complex& u, const Complex& k) { return jacobi_elliptic(u, k).dn; }
inline Complex jacobi_cd(const Complex& u, const Complex& k) {
    auto j = jacobi_elliptic(u, k);
    return j.cn / j.dn;
}

}  // namespace dw::specfun
