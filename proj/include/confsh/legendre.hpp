#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "confsh/alpha_poly.hpp"
#include "confsh/classical.hpp"

namespace confsh {

/// Conformable associated Legendre polynomial P_{l a}^{m a} in the variable
/// u = cos(theta^alpha):
///
///     P(u) = (1 - u^2)^(edge_exponent/2) * body(u)
///
/// built by the Rodrigues-type formula. The Condon-Shortley sign and the
/// 1/(alpha^l 2^l l!) prefactor are folded into the body coefficients.
struct AssociatedLegendre {
    int l;
    int m;
    Alpha alpha;
    int edge_exponent; // the m of (1-u^2)^(m/2); negative for negative m
    AlphaPoly body;

    double operator()(double u) const;
};

/// (-1)^m (l-m)! / (alpha^(2m) (l+m)!), the exact factor relating
/// P^{-m} to P^{m}.
inline Rational negative_m_factor(int l, int m, const Alpha& alpha) {
    if (m < 0) throw std::invalid_argument("negative_m_factor: m must be non-negative");
    if (m > l) throw std::invalid_argument("negative_m_factor: m exceeds l");
    Rational f(factorial(l - m), factorial(l + m));
    f /= rational_pow(alpha.value, 2 * m);
    return (m % 2) ? Rational(-f) : f;
}

/// Rodrigues construction
///   P = (-1)^m (1-u^2)^(m/2) / (alpha^l 2^l l!) D^((l+m)a) (u^2-1)^l,
/// valid for signed m with |m| <= l (the negative-m branch lowers the
/// derivative order to l-|m| and flips the edge exponent, with the same
/// (-1)^|m| sign).
inline AssociatedLegendre rodrigues(int l, int m, const Alpha& alpha) {
    if (l < 0) throw std::invalid_argument("rodrigues: l must be non-negative");
    if (std::abs(m) > l) throw std::invalid_argument("rodrigues: m exceeds l");
    const AlphaPoly u2m1 =
        AlphaPoly::monomial(alpha, 2) - AlphaPoly::constant(alpha, Rational(1));
    AlphaPoly body = conformable_derive_n(pow(u2m1, l), l + m);
    Rational pref =
        Rational(1) / (rational_pow(alpha.value, l) * rational_pow(Rational(2), l) * factorial(l));
    if (std::abs(m) % 2) pref = -pref;
    body *= pref;
    return {l, m, alpha, m, std::move(body)};
}

inline double legendre_evaluate(const AssociatedLegendre& P, double u) {
    if (std::abs(u) > 1.0)
        throw std::domain_error("legendre_evaluate: u outside [-1, 1]");
    const double omu2 = (1.0 - u) * (1.0 + u);
    if (P.edge_exponent < 0 && omu2 == 0.0)
        throw std::domain_error("legendre_evaluate: singular at |u| = 1 for negative m");
    double edge = 1.0;
    if (P.edge_exponent != 0) edge = std::pow(omu2, 0.5 * P.edge_exponent);
    return edge * P.body.eval_u(u);
}

inline double AssociatedLegendre::operator()(double u) const { return legendre_evaluate(*this, u); }

/// (1-u^2)^(edge/2) * body(u); closed under the conformable derivative
/// D_x^alpha (with u = x^alpha) via the chain rule
/// D^a (1-u^2)^p = p (1-u^2)^(p-1) (-2 alpha u).
struct EdgePoly {
    int edge;
    AlphaPoly body;

    double eval(double u) const {
        const double omu2 = (1.0 - u) * (1.0 + u);
        double e = 1.0;
        if (edge != 0) e = std::pow(omu2, 0.5 * edge);
        return e * body.eval_u(u);
    }
};

inline EdgePoly conformable_derive(const EdgePoly& g) {
    const Alpha& a = g.body.alpha();
    const AlphaPoly u = AlphaPoly::monomial(a, 1);
    const AlphaPoly omu2 =
        AlphaPoly::constant(a, Rational(1)) - AlphaPoly::monomial(a, 2);
    AlphaPoly b = (u * g.body) * Rational(-g.edge * a.value) + omu2 * conformable_derive(g.body);
    return {g.edge - 2, std::move(b)};
}

/// The three summands of the conformable associated Legendre ODE
///   (1-u^2) D^a D^a X - 2 alpha u D^a X + alpha^2 [l(l+1) - m^2/(1-u^2)] X
/// evaluated at u, plus their sum. A Rodrigues-built P drives the residual
/// to round-off; a mismatched (l, m) leaves an O(alpha^2) remainder.
struct OdeResidualReport {
    double u;
    double residual;
    std::array<double, 3> terms;

    double scale() const {
        return std::max({std::abs(terms[0]), std::abs(terms[1]), std::abs(terms[2])});
    }
};

inline OdeResidualReport ode_residual(const AssociatedLegendre& P, double u) {
    if (!(u > -1.0 && u < 1.0)) {
        if (std::abs(u) == 1.0 && P.m != 0)
            throw std::domain_error("ode_residual: singular point |u| = 1 with m != 0");
        throw std::domain_error("ode_residual: u outside (-1, 1)");
    }
    const Alpha& a = P.alpha;
    const Rational av = a.value;
    const AlphaPoly um = AlphaPoly::monomial(a, 1);

    const EdgePoly X{P.edge_exponent, P.body};
    const EdgePoly d1 = conformable_derive(X);
    const EdgePoly d2 = conformable_derive(d1);

    // (1-u^2) * D^a D^a X  --  the factor raises the edge exponent by 2
    const double t1 = EdgePoly{d2.edge + 2, d2.body}.eval(u);
    // -2 alpha x^alpha D^a X, with x^alpha = u
    const double t2 = EdgePoly{d1.edge, (um * d1.body) * Rational(-2 * av)}.eval(u);
    // alpha^2 [ l(l+1) - m^2/(1-u^2) ] X
    const Rational a2 = av * av;
    const double t3 = to_double(a2 * (P.l * (P.l + 1))) * X.eval(u) -
                      to_double(a2 * (P.m * P.m)) * EdgePoly{X.edge - 2, X.body}.eval(u);

    return {u, t1 + t2 + t3, {t1, t2, t3}};
}

/// Max |rodrigues(l, m, 1) - classical recurrence| over u in {-0.9, ..., 0.9};
/// the alpha = 1 regression check.
inline double classical_compare(int l, int m) {
    const AssociatedLegendre P = rodrigues(l, m, Alpha(Rational(1)));
    double worst = 0.0;
    for (int i = -9; i <= 9; ++i) {
        const double u = 0.1 * i;
        worst = std::max(worst, std::abs(P(u) - classical_assoc_legendre(l, m, u)));
    }
    return worst;
}

} // namespace confsh
