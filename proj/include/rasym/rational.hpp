#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rasym/errors.hpp"

namespace rasym {

// Exact rational numbers. mpq_class keeps values canonical (reduced,
// positive denominator) as long as they are built through its API.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational rat(long num, long den = 1) {
    if (den == 0) throw DomainError("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

// Parses "a", "-a", "a/b" with arbitrary-size components.
inline Rational rat_from_string(const std::string& s) {
    if (s.empty()) throw SyntaxError("empty rational", 0);
    Rational q;
    if (q.set_str(s, 10) != 0) throw SyntaxError("bad rational literal '" + s + "'", 0);
    if (q.get_den() == 0) throw DomainError("rational with zero denominator");
    q.canonicalize();
    return q;
}

inline std::string rat_to_string(const Rational& q) { return q.get_str(); }

inline bool rat_is_integer(const Rational& q) { return q.get_den() == 1; }

inline long rat_to_long(const Rational& q) {
    if (!rat_is_integer(q) || !q.get_num().fits_slong_p())
        throw DomainError("rational " + rat_to_string(q) + " is not a machine integer");
    return q.get_num().get_si();
}

// Generalized binomial coefficient binom(r, j) with rational upper index.
inline Rational rat_binom(const Rational& r, unsigned j) {
    Rational result(1);
    for (unsigned i = 0; i < j; ++i) {
        result *= (r - Rational(static_cast<long>(i)));
        result /= Rational(static_cast<long>(i) + 1);
    }
    return result;
}

// Exact n-th root of a nonnegative integer, if it is a perfect power.
inline std::optional<Integer> int_root_exact(const Integer& v, unsigned long n) {
    if (v < 0) return std::nullopt;
    Integer r;
    int exact = mpz_root(r.get_mpz_t(), v.get_mpz_t(), n);
    if (!exact) return std::nullopt;
    return r;
}

// Exact rational n-th root of q > 0, if one exists.
inline std::optional<Rational> rat_root_exact(const Rational& q, unsigned long n) {
    if (q <= 0) return std::nullopt;
    auto rn = int_root_exact(q.get_num(), n);
    if (!rn) return std::nullopt;
    auto rd = int_root_exact(q.get_den(), n);
    if (!rd) return std::nullopt;
    Rational r(*rn, *rd);
    r.canonicalize();
    return r;
}

// q^e for integer e (negative exponents allowed, q != 0).
inline Rational rat_pow_int(const Rational& q, long e) {
    if (e == 0) return Rational(1);
    if (q == 0 && e < 0) throw DomainError("0 raised to a negative power");
    Rational base = e > 0 ? q : Rational(1) / q;
    unsigned long n = static_cast<unsigned long>(e > 0 ? e : -e);
    Rational acc(1);
    while (n) {
        if (n & 1) acc *= base;
        base *= base;
        n >>= 1;
    }
    return acc;
}

// Trial-division factorization of a positive integer. Inputs here are tiny
// (scale bases like 2, 3, 4/3), so this never needs to be clever.
inline std::vector<std::pair<unsigned long, unsigned long>> factor_positive(Integer v) {
    if (v <= 0) throw DomainError("factorization of a nonpositive integer");
    std::vector<std::pair<unsigned long, unsigned long>> out;
    auto strip = [&](unsigned long p) {
        unsigned long e = 0;
        while (mpz_divisible_ui_p(v.get_mpz_t(), p)) {
            mpz_divexact_ui(v.get_mpz_t(), v.get_mpz_t(), p);
            ++e;
        }
        if (e) out.emplace_back(p, e);
    };
    strip(2);
    for (unsigned long p = 3; Integer(p) * p <= v; p += 2) strip(p);
    if (v > 1) {
        if (!v.fits_ulong_p())
            throw DomainError("scale base has an unreasonably large prime factor");
        out.emplace_back(v.get_ui(), 1);
    }
    return out;
}

inline long lcm_long(long a, long b) {
    Integer g;
    mpz_gcd(g.get_mpz_t(), Integer(a).get_mpz_t(), Integer(b).get_mpz_t());
    Integer l = Integer(a) / g * b;
    return l.get_si();
}

}  // namespace rasym
