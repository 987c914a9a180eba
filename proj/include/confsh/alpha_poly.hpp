#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "confsh/rational.hpp"

namespace confsh {

/// Fractional order of the conformable derivative, 0 < alpha <= 1.
struct Alpha {
    Rational value;

    explicit Alpha(Rational v) : value(std::move(v)) {
        if (!(value > 0 && value <= 1))
            throw std::invalid_argument("Alpha: order must satisfy 0 < alpha <= 1");
    }
    explicit Alpha(const std::string& text) : Alpha(parse_rational(text)) {}

    bool operator==(const Alpha&) const = default;
};

namespace detail {

inline double ipow(double x, int n) {
    double r = 1.0;
    for (; n > 0; n >>= 1, x *= x)
        if (n & 1) r *= x;
    return r;
}

inline long double ipow(long double x, int n) {
    long double r = 1.0L;
    for (; n > 0; n >>= 1, x *= x)
        if (n & 1) r *= x;
    return r;
}

} // namespace detail

/// Polynomial in u = t^alpha with exact rational coefficients:
/// sum over k of c_k u^k, i.e. sum of c_k t^(alpha k) for t >= 0.
/// The coefficient map never stores zeros; the class is closed under
/// the conformable derivative via the power rule.
class AlphaPoly {
public:
    explicit AlphaPoly(Alpha alpha) : alpha_(std::move(alpha)) {}

    AlphaPoly(Alpha alpha, std::map<int, Rational> terms)
        : alpha_(std::move(alpha)), terms_(std::move(terms)) {
        for (auto it = terms_.begin(); it != terms_.end();) {
            if (it->first < 0)
                throw std::invalid_argument("AlphaPoly: negative degree");
            it = (it->second == 0) ? terms_.erase(it) : std::next(it);
        }
    }

    static AlphaPoly constant(const Alpha& a, Rational c) {
        return AlphaPoly(a, {{0, std::move(c)}});
    }
    static AlphaPoly monomial(const Alpha& a, int degree, Rational c = Rational(1)) {
        return AlphaPoly(a, {{degree, std::move(c)}});
    }

    const Alpha& alpha() const { return alpha_; }
    const std::map<int, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int degree() const { return terms_.empty() ? -1 : terms_.rbegin()->first; }

    Rational coeff(int k) const {
        auto it = terms_.find(k);
        return it == terms_.end() ? Rational(0) : it->second;
    }
    Rational leading_coeff() const {
        return terms_.empty() ? Rational(0) : terms_.rbegin()->second;
    }

    bool operator==(const AlphaPoly& o) const {
        return alpha_ == o.alpha_ && terms_ == o.terms_;
    }

    AlphaPoly& operator+=(const AlphaPoly& o) {
        require_same_alpha(o);
        for (const auto& [k, c] : o.terms_) add_term(k, c);
        return *this;
    }
    AlphaPoly& operator-=(const AlphaPoly& o) {
        require_same_alpha(o);
        for (const auto& [k, c] : o.terms_) add_term(k, -c);
        return *this;
    }
    AlphaPoly& operator*=(const Rational& s) {
        if (s == 0) {
            terms_.clear();
        } else {
            for (auto& [k, c] : terms_) c *= s;
        }
        return *this;
    }

    friend AlphaPoly operator+(AlphaPoly a, const AlphaPoly& b) { return a += b; }
    friend AlphaPoly operator-(AlphaPoly a, const AlphaPoly& b) { return a -= b; }
    friend AlphaPoly operator*(AlphaPoly a, const Rational& s) { return a *= s; }
    friend AlphaPoly operator*(const Rational& s, AlphaPoly a) { return a *= s; }
    friend AlphaPoly operator-(AlphaPoly a) { return a *= Rational(-1); }

    friend AlphaPoly operator*(const AlphaPoly& a, const AlphaPoly& b) {
        a.require_same_alpha(b);
        AlphaPoly r(a.alpha_);
        for (const auto& [ka, ca] : a.terms_)
            for (const auto& [kb, cb] : b.terms_) r.add_term(ka + kb, ca * cb);
        return r;
    }

    /// Horner evaluation of sum c_k u^k.
    double eval_u(double u) const {
        double r = 0.0;
        int prev = -1;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            if (prev >= 0) r *= detail::ipow(u, prev - it->first);
            r += to_double(it->second);
            prev = it->first;
        }
        if (prev > 0) r *= detail::ipow(u, prev);
        return prev < 0 ? 0.0 : r;
    }

    long double eval_u_ld(long double u) const {
        long double r = 0.0L;
        int prev = -1;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            if (prev >= 0) r *= detail::ipow(u, prev - it->first);
            r += to_long_double(it->second);
            prev = it->first;
        }
        if (prev > 0) r *= detail::ipow(u, prev);
        return prev < 0 ? 0.0L : r;
    }

    /// Evaluation at the original variable, u = t^alpha. Definition 2.1 style
    /// objects live on [0, inf), so negative t is rejected.
    double eval_t(double t) const {
        if (t < 0) throw std::domain_error("AlphaPoly::eval_t: t must be non-negative");
        return eval_u(std::pow(t, to_double(alpha_.value)));
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            Rational c = it->second;
            if (!first) os << (c < 0 ? " - " : " + ");
            else if (c < 0) os << "-";
            first = false;
            Rational a = c < 0 ? Rational(-c) : c;
            if (a != 1 || it->first == 0) {
                os << numerator(a).str();
                if (denominator(a) != 1) os << "/" << denominator(a).str();
                if (it->first != 0) os << "*";
            }
            if (it->first > 0) {
                os << "u";
                if (it->first > 1) os << "^" << it->first;
            }
        }
        return os.str();
    }

private:
    void require_same_alpha(const AlphaPoly& o) const {
        if (!(alpha_ == o.alpha_))
            throw std::invalid_argument("AlphaPoly: mixing polynomials with different alpha");
    }
    void add_term(int k, const Rational& c) {
        auto [it, inserted] = terms_.try_emplace(k, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Alpha alpha_;
    std::map<int, Rational> terms_;
};

inline AlphaPoly pow(const AlphaPoly& p, int n) {
    if (n < 0) throw std::invalid_argument("pow(AlphaPoly): negative exponent");
    AlphaPoly r = AlphaPoly::constant(p.alpha(), Rational(1));
    AlphaPoly base = p;
    for (; n > 0; n >>= 1) {
        if (n & 1) r = r * base;
        if (n > 1) base = base * base;
    }
    return r;
}

/// Conformable derivative in u-space: c_k u^k -> c_k (alpha k) u^(k-1).
inline AlphaPoly conformable_derive(const AlphaPoly& p) {
    std::map<int, Rational> out;
    for (const auto& [k, c] : p.terms()) {
        if (k == 0) continue;
        out.emplace(k - 1, c * p.alpha().value * k);
    }
    return AlphaPoly(p.alpha(), std::move(out));
}

/// k-fold conformable derivative; D^(k alpha) u^l = alpha^k l!/(l-k)! u^(l-k).
inline AlphaPoly conformable_derive_n(AlphaPoly p, int k) {
    if (k < 0) throw std::invalid_argument("conformable_derive_n: negative order");
    for (int i = 0; i < k && !p.is_zero(); ++i) p = conformable_derive(p);
    return p;
}

/// Leibniz expansion sum_{k=0..n} C(n,k) D^((n-k)a)p D^(ka)q; agrees exactly
/// with conformable_derive_n(p*q, n).
inline AlphaPoly leibniz_expand(const AlphaPoly& p, const AlphaPoly& q, int n) {
    if (!(p.alpha() == q.alpha()))
        throw std::invalid_argument("leibniz_expand: mixing polynomials with different alpha");
    std::vector<AlphaPoly> dp{p}, dq{q};
    for (int k = 1; k <= n; ++k) {
        dp.push_back(conformable_derive(dp.back()));
        dq.push_back(conformable_derive(dq.back()));
    }
    AlphaPoly r(p.alpha());
    for (int k = 0; k <= n; ++k)
        r += Rational(binomial(n, k)) * (dp[n - k] * dq[k]);
    return r;
}

using ScalarFn = std::function<double(double)>;

/// Finite-epsilon quotient of the conformable derivative definition,
/// (f(t + eps t^(1-alpha)) - f(t))/eps; tends to T_alpha f(t) as eps -> 0.
inline double limit_derivative(const ScalarFn& f, double t, const Alpha& alpha, double eps) {
    if (t <= 0) throw std::domain_error("limit_derivative: t must be positive");
    if (eps <= 0) throw std::invalid_argument("limit_derivative: eps must be positive");
    const double h = eps * std::pow(t, 1.0 - to_double(alpha.value));
    return (f(t + h) - f(t)) / eps;
}

/// One Richardson step on the one-sided quotient; O(eps^2) truncation.
inline double limit_derivative_richardson(const ScalarFn& f, double t, const Alpha& alpha,
                                          double eps) {
    return 2.0 * limit_derivative(f, t, alpha, eps / 2) - limit_derivative(f, t, alpha, eps);
}

} // namespace confsh
