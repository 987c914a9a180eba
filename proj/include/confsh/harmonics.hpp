#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

#include "confsh/legendre.hpp"

namespace confsh {

/// A point on the deformed sphere: theta in [0, pi^(1/alpha)] (so theta^alpha
/// sweeps [0, pi]) and phi in [0, 2 pi].
struct AngularPoint {
    double theta;
    double phi;
};

/// Conformable spherical harmonic
///   Y = N e^(i m phi^alpha) P_{l a}^{m a}(cos(theta^alpha)),
/// with N^2 = norm_sq_rational * (2 pi)^(two_pi_exponent) kept exact: the
/// rational part is (2l+1)(l-m)! / (alpha^(2m-2) 2 (l+m)!) and the (2 pi)
/// exponent is -alpha.
struct SphericalHarmonic {
    int l;
    int m;
    Alpha alpha;
    Rational norm_sq_rational;
    Rational two_pi_exponent;
    AssociatedLegendre legendre;

    double norm() const {
        return std::sqrt(to_double(norm_sq_rational) *
                         std::pow(2.0 * std::numbers::pi, to_double(two_pi_exponent)));
    }
    long double norm_ld() const {
        return sqrtl(to_long_double(norm_sq_rational) *
                     powl(2.0L * std::numbers::pi_v<long double>, to_long_double(two_pi_exponent)));
    }
};

inline Rational norm_squared_rational(int l, int m, const Alpha& alpha) {
    if (std::abs(m) > l) throw std::invalid_argument("norm_squared_rational: m exceeds l");
    return Rational(Int(2 * l + 1) * factorial(l - m), Int(2) * factorial(l + m)) /
           rational_pow(alpha.value, 2 * m - 2);
}

/// N = sqrt((2l+1)(l-m)! / (alpha^(2m-2) 2 (l+m)! (2 pi)^alpha)), positive root.
inline double normalization_constant(int l, int m, const Alpha& alpha) {
    return std::sqrt(to_double(norm_squared_rational(l, m, alpha)) *
                     std::pow(2.0 * std::numbers::pi, -to_double(alpha.value)));
}

inline SphericalHarmonic make_harmonic(int l, int m, const Alpha& alpha) {
    if (std::abs(m) > l) throw std::invalid_argument("make_harmonic: m exceeds l");
    return {l,
            m,
            alpha,
            norm_squared_rational(l, m, alpha),
            Rational(-alpha.value),
            rodrigues(l, m, alpha)};
}

namespace detail {

/// Maps theta to theta^alpha in [0, pi], with round-off slack at the top end.
inline double deformed_colatitude(double theta, const Alpha& alpha) {
    if (theta < 0) throw std::domain_error("harmonic: theta must be non-negative");
    double v = std::pow(theta, to_double(alpha.value));
    if (v > std::numbers::pi) {
        if (v > std::numbers::pi + 1e-9)
            throw std::domain_error("harmonic: theta^alpha exceeds pi");
        v = std::numbers::pi;
    }
    return v;
}

inline double deformed_azimuth(double phi, const Alpha& alpha) {
    if (phi < 0) throw std::domain_error("harmonic: phi must be non-negative");
    if (phi > 2.0 * std::numbers::pi) {
        if (phi > 2.0 * std::numbers::pi + 1e-9)
            throw std::domain_error("harmonic: phi outside [0, 2 pi]");
        phi = 2.0 * std::numbers::pi;
    }
    return std::pow(phi, to_double(alpha.value));
}

inline std::complex<long double> harmonic_eval_ld(const SphericalHarmonic& Y, long double theta,
                                                  long double phi) {
    const long double a = to_long_double(Y.alpha.value);
    const long double v = powl(theta, a);
    const long double u = cosl(v);
    const long double omu2 = (1.0L - u) * (1.0L + u);
    long double edge = 1.0L;
    if (Y.legendre.edge_exponent != 0) edge = powl(omu2, 0.5L * Y.legendre.edge_exponent);
    const long double p = edge * Y.legendre.body.eval_u_ld(u);
    const long double w = Y.m == 0 ? 0.0L : (long double)Y.m * powl(phi, a);
    const long double r = Y.norm_ld() * p;
    return {r * cosl(w), r * sinl(w)};
}

} // namespace detail

inline std::complex<double> harmonic_evaluate(const SphericalHarmonic& Y, const AngularPoint& pt) {
    const double v = detail::deformed_colatitude(pt.theta, Y.alpha);
    double u = std::cos(v);
    u = std::clamp(u, -1.0, 1.0);
    const double p = legendre_evaluate(Y.legendre, u);
    const double w = Y.m == 0 ? 0.0 : Y.m * detail::deformed_azimuth(pt.phi, Y.alpha);
    const double r = Y.norm() * p;
    return {r * std::cos(w), r * std::sin(w)};
}

/// |Y|^2; independent of phi since |e^(i m phi^alpha)| = 1.
inline double density(const SphericalHarmonic& Y, const AngularPoint& pt) {
    return std::norm(harmonic_evaluate(Y, pt));
}

/// Max |Y^{-m}(pt) - (-1)^m conj(Y^{m}(pt))| over the samples; the two sides
/// come from independent code paths (direct negative-m Rodrigues vs.
/// conjugation).
inline double conjugation_check(int l, int m, const Alpha& alpha,
                                std::span<const AngularPoint> points) {
    if (m < 0) throw std::invalid_argument("conjugation_check: m must be non-negative");
    const SphericalHarmonic ym = make_harmonic(l, m, alpha);
    const SphericalHarmonic yneg = make_harmonic(l, -m, alpha);
    const double sign = (m % 2) ? -1.0 : 1.0;
    double worst = 0.0;
    for (const AngularPoint& pt : points) {
        const std::complex<double> lhs = harmonic_evaluate(yneg, pt);
        const std::complex<double> rhs = sign * std::conj(harmonic_evaluate(ym, pt));
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    return worst;
}

/// D_phi^(2 alpha) e^(i m phi^alpha) + alpha^2 m^2 e^(i m phi^alpha), the
/// azimuthal-equation residual, with both derivatives taken as numeric limit
/// quotients (Definition 2.2). Evaluated in extended precision so the nested
/// quotient's cancellation stays below the O(eps) truncation.
inline std::complex<double> azimuthal_residual(int m, const Alpha& alpha, double phi,
                                               double eps = 1e-6) {
    if (phi <= 0) throw std::domain_error("azimuthal_residual: phi must be positive");
    if (eps <= 0) throw std::invalid_argument("azimuthal_residual: eps must be positive");
    using C = std::complex<long double>;
    const long double a = to_long_double(alpha.value);
    const long double e = eps;
    const auto f = [&](long double s) -> C {
        const long double w = m * powl(s, a);
        return {cosl(w), sinl(w)};
    };
    const auto d1 = [&](long double s) -> C {
        const long double h = e * powl(s, 1.0L - a);
        return (f(s + h) - f(s)) / e;
    };
    const long double p = phi;
    const long double h0 = e * powl(p, 1.0L - a);
    const C d2 = (d1(p + h0) - d1(p)) / e;
    const C res = d2 + (long double)(m * m) * a * a * f(p);
    return {(double)res.real(), (double)res.imag()};
}

/// Applies the separated angular operator
///   (1/(Y sin v)) D_theta^a [sin v D_theta^a Y] + (1/(Y sin^2 v)) D_phi^(2a) Y,
/// v = theta^alpha, numerically at pt and returns the eigenvalue estimate,
/// expected to approach -alpha^2 l(l+1). Conformable quotients are centered (average of
/// the forward and backward one-sided passes).
inline double angular_eigenvalue(const SphericalHarmonic& Y, const AngularPoint& pt,
                                 double step = 1e-5) {
    using C = std::complex<long double>;
    if (pt.theta <= 0 || pt.phi <= 0)
        throw std::domain_error("angular_eigenvalue: point must have theta > 0 and phi > 0");
    const long double a = to_long_double(Y.alpha.value);
    const long double th = pt.theta, ph = pt.phi;
    const long double v = powl(th, a);
    const long double s = sinl(v);
    if (s < 0.05)
        throw std::domain_error("angular_eigenvalue: point too close to a pole");
    const C y0 = detail::harmonic_eval_ld(Y, th, ph);
    if (std::abs(y0) < 1e-6 * Y.norm_ld())
        throw std::domain_error("angular_eigenvalue: |Y| too small at point (ill-conditioned)");

    const long double e = step;
    const auto dth = [&](long double t) -> C {
        const long double h = e * powl(t, 1.0L - a);
        return (detail::harmonic_eval_ld(Y, t + h, ph) - detail::harmonic_eval_ld(Y, t - h, ph)) /
               (2.0L * e);
    };
    const auto g = [&](long double t) -> C { return sinl(powl(t, a)) * dth(t); };
    const long double hth = e * powl(th, 1.0L - a);
    const C t1 = (g(th + hth) - g(th - hth)) / (2.0L * e);

    const auto dph = [&](long double p) -> C {
        const long double h = e * powl(p, 1.0L - a);
        return (detail::harmonic_eval_ld(Y, th, p + h) - detail::harmonic_eval_ld(Y, th, p - h)) /
               (2.0L * e);
    };
    const long double hph = e * powl(ph, 1.0L - a);
    const C t2 = (dph(ph + hph) - dph(ph - hph)) / (2.0L * e);

    const C val = (t1 / s + t2 / (s * s)) / y0;
    return (double)val.real();
}

} // namespace confsh
