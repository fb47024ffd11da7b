#pragma once

// Exact rational scalars and the integer combinatorics used by the rewriting rules.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace gaudin {

using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "n", "-n" or "n/d" into a canonical rational. Throws std::invalid_argument.
inline Rational parse_rational(std::string_view text)
{
    std::string s(text);
    auto trim = [](std::string& t) {
        auto b = t.find_first_not_of(" \t");
        auto e = t.find_last_not_of(" \t");
        t = (b == std::string::npos) ? std::string{} : t.substr(b, e - b + 1);
    };
    trim(s);
    if (s.empty())
        throw std::invalid_argument("empty rational literal");
    Rational r;
    if (r.set_str(s, 10) != 0)
        throw std::invalid_argument("malformed rational literal '" + s + "'");
    if (s.find('/') != std::string::npos && r.get_den() == 0)
        throw std::invalid_argument("zero denominator in '" + s + "'");
    r.canonicalize();
    return r;
}

/// Canonical n/d. GMP arithmetic assumes canonical operands.
inline Rational fraction(long n, long d)
{
    Rational r(n, d);
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rational& r)
{
    return r.get_str();
}

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }

inline Rational one_like(const Rational&) { return Rational(1); }
inline Rational zero_like(const Rational&) { return Rational(0); }

/// Generalized binomial coefficient C(top, k) for any integer top and k >= 0.
inline Integer binomial(std::int64_t top, std::int64_t k)
{
    if (k < 0)
        return 0;
    Integer num = 1;
    Integer den = 1;
    for (std::int64_t i = 0; i < k; ++i) {
        num *= Integer(static_cast<long>(top - i));
        den *= Integer(static_cast<long>(i + 1));
    }
    return num / den;
}

inline Integer factorial(std::int64_t k)
{
    Integer f = 1;
    for (std::int64_t i = 2; i <= k; ++i)
        f *= static_cast<long>(i);
    return f;
}

/// Coefficient C(i,k) C(j,k) k! of the normal-ordering rule d^i z^j = sum_k (...) z^{j-k} d^{i-k}.
inline Integer reorder_coefficient(std::int64_t i, std::int64_t j, std::int64_t k)
{
    return binomial(i, k) * binomial(j, k) * factorial(k);
}

inline Rational rational_pow(const Rational& base, std::int64_t e)
{
    if (e < 0) {
        if (sgn(base) == 0)
            throw std::domain_error("negative power of zero");
        Rational inv = 1 / base;
        return rational_pow(inv, -e);
    }
    Rational r = 1;
    for (std::int64_t i = 0; i < e; ++i)
        r *= base;
    return r;
}

} // namespace gaudin
