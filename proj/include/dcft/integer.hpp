#pragma once

#include <cstdint>
#include <string>
#include <type_traits>

#include <gmpxx.h>

#include "dcft/error.hpp"

namespace dcft {

using Integer = mpz_class;

inline Integer abs(const Integer& a) { return ::abs(a); }

inline Integer gcd(const Integer& a, const Integer& b)
{
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Integer lcm(const Integer& a, const Integer& b)
{
    Integer l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

// Floor division and the matching nonnegative remainder (for b > 0).
inline Integer floor_div(const Integer& a, const Integer& b)
{
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline Integer mod(const Integer& a, const Integer& b)
{
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    if (r < 0) r += ::abs(b);
    return r;
}

// Quotient rounded to nearest; keeps remainders in (-|b|/2, |b|/2].
inline Integer nearest_div(const Integer& a, const Integer& b)
{
    Integer q = floor_div(a, b);
    Integer r = a - q * b;
    Integer twice = 2 * r;
    if (b > 0 ? twice > b : twice < b) q += 1;
    return q;
}

// Extended gcd: returns g = gcd(a, b) >= 0 with g = s*a + t*b.
inline Integer xgcd(const Integer& a, const Integer& b, Integer& s, Integer& t)
{
    Integer g;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Integer pow(const Integer& base, unsigned long e)
{
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline bool fits_int64(const Integer& a) { return a.fits_slong_p(); }

inline std::int64_t to_int64(const Integer& a)
{
    if (!a.fits_slong_p()) throw Overflow();
    return a.get_si();
}

inline std::string to_string(const Integer& a) { return a.get_str(); }

inline Integer parse_integer(const std::string& s)
{
    Integer r;
    if (s.empty() || r.set_str(s, 10) != 0) throw InvalidInput("not an integer: '" + s + "'");
    return r;
}

// Overflow-checked int64 arithmetic for the sparse fast paths.
namespace checked {

inline std::int64_t add(std::int64_t a, std::int64_t b)
{
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw Overflow();
    return r;
}

inline std::int64_t mul(std::int64_t a, std::int64_t b)
{
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw Overflow();
    return r;
}

inline Integer add(const Integer& a, const Integer& b) { return a + b; }
inline Integer mul(const Integer& a, const Integer& b) { return a * b; }

}  // namespace checked

template <class T>
inline Integer to_integer(const T& v)
{
    if constexpr (std::is_same_v<T, Integer>)
        return v;
    else
        return Integer(static_cast<long>(v));
}

template <class T>
inline bool is_unit(const T& v)
{
    return v == 1 || v == -1;
}

}  // namespace dcft
