#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <complex>

namespace dw {

// Adaptive Gauss-Kronrod (G7K15). Shared by the action contour integrals,
// the fluctuation factor and the test oracles.
template <class F>
double integrate(F&& f, double a, double b, double tol = 1e-13) {
    return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        std::forward<F>(f), a, b, 15, tol);
}

template <class F>
std::complex<double> integrate_c(F&& f, double a, double b, double tol = 1e-13) {
    return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        std::forward<F>(f), a, b, 15, tol);
}

}  // namespace dw
