#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace confsh {

using Int = boost::multiprecision::cpp_int;

/// Exact rational number, always stored in lowest terms with positive
/// denominator (canonical form is maintained by the backend).
using Rational = boost::multiprecision::cpp_rational;

inline Int factorial(int n) {
    if (n < 0) throw std::invalid_argument("factorial: negative argument");
    Int r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

inline Int binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    Int r = 1;
    for (int i = 1; i <= k; ++i) {
        r *= (n - k + i);
        r /= i;
    }
    return r;
}

/// base^e with integer (possibly negative) exponent.
inline Rational rational_pow(Rational base, long e) {
    if (e < 0) {
        if (base == 0) throw std::domain_error("rational_pow: 0 to a negative power");
        base = Rational(1) / base;
        e = -e;
    }
    Rational r = 1;
    while (e > 0) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

inline double to_double(const Rational& q) { return q.convert_to<double>(); }
inline long double to_long_double(const Rational& q) { return q.convert_to<long double>(); }

/// Canonical "p/q" rendering (denominator always explicit).
inline std::string format_rational(const Rational& q) {
    return numerator(q).str() + "/" + denominator(q).str();
}

namespace detail {

inline bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (c < '0' || c > '9') return false;
    return true;
}

} // namespace detail

/// Parses "p/q", an integer, or a decimal literal. Decimals are converted
/// exactly when they carry at most six fractional digits; longer ones are
/// rounded to the nearest rational with denominator 10^6.
inline Rational parse_rational(const std::string& text) {
    std::string s = text;
    bool negative = false;
    if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
        negative = (s[0] == '-');
        s = s.substr(1);
    }
    Rational result;
    if (auto slash = s.find('/'); slash != std::string::npos) {
        std::string p = s.substr(0, slash), q = s.substr(slash + 1);
        if (!detail::all_digits(p) || !detail::all_digits(q))
            throw std::invalid_argument("parse_rational: malformed fraction '" + text + "'");
        Int num(p), den(q);
        if (den == 0) throw std::invalid_argument("parse_rational: zero denominator in '" + text + "'");
        result = Rational(num, den);
    } else if (auto dot = s.find('.'); dot != std::string::npos) {
        std::string ip = s.substr(0, dot), fp = s.substr(dot + 1);
        if (ip.empty()) ip = "0";
        if (fp.empty()) fp = "0";
        if (!detail::all_digits(ip) || !detail::all_digits(fp))
            throw std::invalid_argument("parse_rational: malformed decimal '" + text + "'");
        Int den = 1;
        for (size_t i = 0; i < fp.size(); ++i) den *= 10;
        Rational q(Int(ip) * den + Int(fp), den);
        if (denominator(q) > 1000000) {
            // round to nearest n/10^6
            Int n = (numerator(q) * 2000000 + denominator(q)) / (denominator(q) * 2);
            q = Rational(n, 1000000);
        }
        result = q;
    } else {
        if (!detail::all_digits(s))
            throw std::invalid_argument("parse_rational: malformed number '" + text + "'");
        result = Rational(Int(s));
    }
    return negative ? -result : result;
}

} // namespace confsh
