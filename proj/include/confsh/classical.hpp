#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "confsh/rational.hpp"

namespace confsh {

/// Classical associated Legendre P_l^m(x) with the Condon-Shortley phase,
/// computed by the standard three-term recurrence. Kept independent of the
/// Rodrigues/AlphaPoly path on purpose: it is the alpha = 1 regression oracle.
inline double classical_assoc_legendre(int l, int m, double x) {
    if (l < 0 || std::abs(m) > l)
        throw std::invalid_argument("classical_assoc_legendre: require |m| <= l");
    if (std::abs(x) > 1.0)
        throw std::domain_error("classical_assoc_legendre: |x| > 1");
    if (m < 0) {
        const int mu = -m;
        double f = to_double(Rational(factorial(l - mu), factorial(l + mu)));
        if (mu % 2) f = -f;
        return f * classical_assoc_legendre(l, mu, x);
    }
    // P_m^m = (-1)^m (2m-1)!! (1-x^2)^(m/2)
    double pmm = 1.0;
    if (m > 0) {
        const double somx2 = std::sqrt((1.0 - x) * (1.0 + x));
        double fact = 1.0;
        for (int i = 0; i < m; ++i) {
            pmm *= -fact * somx2;
            fact += 2.0;
        }
    }
    if (l == m) return pmm;
    double pmmp1 = x * (2.0 * m + 1.0) * pmm;
    if (l == m + 1) return pmmp1;
    double pll = 0.0;
    for (int ll = m + 2; ll <= l; ++ll) {
        pll = (x * (2.0 * ll - 1.0) * pmmp1 - (ll + m - 1.0) * pmm) / (ll - m);
        pmm = pmmp1;
        pmmp1 = pll;
    }
    return pll;
}

/// Classical orthonormal Y_l^m(theta, phi).
inline std::complex<double> classical_spherical_harmonic(int l, int m, double theta, double phi) {
    const double n2 = (2.0 * l + 1.0) / (4.0 * std::numbers::pi) *
                      to_double(Rational(factorial(l - m), factorial(l + m)));
    const double r = std::sqrt(n2) * classical_assoc_legendre(l, m, std::cos(theta));
    return {r * std::cos(m * phi), r * std::sin(m * phi)};
}

} // namespace confsh
