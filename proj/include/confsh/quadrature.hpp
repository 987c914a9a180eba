#pragma once

#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "confsh/harmonics.hpp"

namespace confsh {

/// Integration with respect to d^alpha t = t^(alpha-1) dt over [lower, upper].
struct ConformableMeasure {
    Alpha alpha;
    double lower;
    double upper;

    ConformableMeasure(Alpha a, double lo, double hi)
        : alpha(std::move(a)), lower(lo), upper(hi) {
        if (!(lo >= 0 && hi > lo))
            throw std::invalid_argument("ConformableMeasure: require 0 <= lower < upper");
    }
};

/// Gauss-Legendre rule on [-1, 1]; exact for polynomials of degree
/// 2*order - 1.
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
    int order = 0;
};

namespace detail {

inline QuadratureRule build_gauss_legendre(int n) {
    QuadratureRule rule;
    rule.order = n;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        // Newton iteration from the Chebyshev-like initial guess
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    return rule;
}

} // namespace detail

inline const QuadratureRule& gauss_legendre(int order) {
    if (order < 1) throw std::invalid_argument("gauss_legendre: order must be positive");
    static std::map<int, QuadratureRule> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(order);
    if (it == cache.end()) it = cache.emplace(order, detail::build_gauss_legendre(order)).first;
    return it->second;
}

/// Integral of f(t) t^(alpha-1) dt over the measure's interval, computed
/// through the exact substitution u = t^alpha:
///   (1/alpha) * integral of f(u^(1/alpha)) du over [lower^alpha, upper^alpha].
/// The substitution removes the endpoint singularity for alpha < 1, so plain
/// Gauss-Legendre converges spectrally on smooth f.
template <class F>
double conformable_integrate(F&& f, const ConformableMeasure& measure, int order) {
    if (order < 2) throw std::invalid_argument("conformable_integrate: order must be >= 2");
    const double a = to_double(measure.alpha.value);
    const double lo = std::pow(measure.lower, a);
    const double hi = std::pow(measure.upper, a);
    const QuadratureRule& rule = gauss_legendre(order);
    const double mid = 0.5 * (hi + lo), half = 0.5 * (hi - lo);
    double sum = 0.0;
    for (int i = 0; i < rule.order; ++i) {
        const double v = mid + half * rule.nodes[i];
        sum += rule.weights[i] * f(std::pow(v, 1.0 / a));
    }
    return half * sum / a;
}

/// Doubles the order until two successive results agree within 1e-10
/// (capped at 512 nodes).
template <class F>
double conformable_integrate_refined(F&& f, const ConformableMeasure& measure, int order = 64) {
    double prev = conformable_integrate(f, measure, order);
    while (order < 512) {
        order *= 2;
        const double next = conformable_integrate(f, measure, order);
        if (std::abs(next - prev) <= 1e-10 * std::max(1.0, std::abs(next))) return next;
        prev = next;
    }
    return prev;
}

/// Integral of g over the conformable solid angle
///   d^alpha Omega = sin(theta^alpha) d^alpha theta d^alpha phi,
/// theta in [0, pi^(1/alpha)], phi in [0, 2 pi]. Substituting u = cos(theta^alpha)
/// and w = phi^alpha gives
///   (1/alpha^2) * int_{-1}^{1} du int_0^{(2 pi)^alpha} dw  g(acos(u)^(1/alpha), w^(1/alpha)).
template <class G>
std::complex<double> solid_angle_integrate(G&& g, const Alpha& alpha, int order) {
    if (order < 2) throw std::invalid_argument("solid_angle_integrate: order must be >= 2");
    const double a = to_double(alpha.value);
    const double w_hi = std::pow(2.0 * std::numbers::pi, a);
    const QuadratureRule& rule = gauss_legendre(order);
    std::complex<double> sum = 0.0;
    for (int i = 0; i < rule.order; ++i) {
        const double u = rule.nodes[i];
        const double theta = std::pow(std::acos(u), 1.0 / a);
        std::complex<double> inner = 0.0;
        for (int j = 0; j < rule.order; ++j) {
            const double w = 0.5 * w_hi * (1.0 + rule.nodes[j]);
            const double phi = std::pow(w, 1.0 / a);
            inner += rule.weights[j] * g(AngularPoint{theta, phi});
        }
        sum += rule.weights[i] * inner;
    }
    return sum * (0.5 * w_hi) / (a * a);
}

template <class G>
std::complex<double> solid_angle_integrate_refined(G&& g, const Alpha& alpha, int order = 64) {
    std::complex<double> prev = solid_angle_integrate(g, alpha, order);
    while (order < 512) {
        order *= 2;
        const std::complex<double> next = solid_angle_integrate(g, alpha, order);
        if (std::abs(next - prev) <= 1e-10 * std::max(1.0, std::abs(next))) return next;
        prev = next;
    }
    return prev;
}

/// int P_{l' a}^{m a} P_{l a}^{m a} d^alpha Omega. The phi integral
/// contributes (2 pi)^alpha / alpha exactly; the theta part is quadrature
/// over the conformable measure.
inline double legendre_orthogonality(int l, int l_prime, int m, const Alpha& alpha,
                                     int order = 64) {
    if (std::abs(m) > std::min(l, l_prime))
        throw std::invalid_argument("legendre_orthogonality: m exceeds min(l, l')");
    const double a = to_double(alpha.value);
    const AssociatedLegendre p = rodrigues(l, m, alpha);
    const AssociatedLegendre q = rodrigues(l_prime, m, alpha);
    const ConformableMeasure theta_measure(alpha, 0.0, std::pow(std::numbers::pi, 1.0 / a));
    const double theta_part = conformable_integrate_refined(
        [&](double theta) {
            const double v = std::min(std::pow(theta, a), std::numbers::pi);
            const double u = std::clamp(std::cos(v), -1.0, 1.0);
            return p(u) * q(u) * std::sin(v);
        },
        theta_measure, order);
    return std::pow(2.0 * std::numbers::pi, a) / a * theta_part;
}

/// The paper's closed-form diagonal of the integral above:
///   (2 pi)^alpha / alpha * alpha^(2m-1) 2 (l+m)! / ((2l+1)(l-m)!).
inline double legendre_orthogonality_diagonal(int l, int m, const Alpha& alpha) {
    const Rational rat = rational_pow(alpha.value, 2 * m - 1) * 2 * factorial(l + m) /
                         (Rational(2 * l + 1) * factorial(l - m));
    const double a = to_double(alpha.value);
    return std::pow(2.0 * std::numbers::pi, a) / a * to_double(rat);
}

/// Inner products of normalized harmonics at fixed m, l in [|m|, l_max].
struct GramReport {
    int m = 0;
    std::vector<int> ls;
    std::vector<std::vector<std::complex<double>>> matrix;
    double max_off_diagonal = 0.0;
    double max_diag_deviation = 0.0;
};

inline GramReport gram_matrix(int l_max, int m, const Alpha& alpha, int order = 64) {
    if (std::abs(m) > l_max)
        throw std::invalid_argument("gram_matrix: |m| exceeds l_max");
    GramReport report;
    report.m = m;
    std::vector<SphericalHarmonic> ys;
    for (int l = std::abs(m); l <= l_max; ++l) {
        report.ls.push_back(l);
        ys.push_back(make_harmonic(l, m, alpha));
    }
    const size_t n = ys.size();
    report.matrix.assign(n, std::vector<std::complex<double>>(n));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) {
            const std::complex<double> v = solid_angle_integrate_refined(
                [&](const AngularPoint& pt) {
                    return harmonic_evaluate(ys[i], pt) * std::conj(harmonic_evaluate(ys[j], pt));
                },
                alpha, order);
            report.matrix[i][j] = v;
            const double dev = (i == j) ? std::abs(v - 1.0) : std::abs(v);
            if (i == j)
                report.max_diag_deviation = std::max(report.max_diag_deviation, dev);
            else
                report.max_off_diagonal = std::max(report.max_off_diagonal, dev);
        }
    }
    return report;
}

} // namespace confsh
