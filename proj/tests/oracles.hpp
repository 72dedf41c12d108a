#pragma once

// Independent reference computations used by the tests. None of these call
// the sparse reduction engine.

#include <cstddef>
#include <numeric>
#include <vector>

#include "dcft/abgroup.hpp"
#include "dcft/group.hpp"
#include "dcft/smith.hpp"

namespace oracle {

using dcft::FgAbGroup;
using dcft::Integer;
using dcft::IntMatrix;

// H_n = ker d_n / im d_{n+1} straight from dense Smith forms.
inline FgAbGroup dense_homology(const IntMatrix& d_out, std::size_t rank_n, const IntMatrix& d_in)
{
    const std::size_t r_out = d_out.rows() == 0 ? 0 : dcft::snf(d_out, {false, false}).rank();
    auto s_in = dcft::snf(d_in, {false, false});
    FgAbGroup h;
    h.free_rank = rank_n - r_out - s_in.rank();
    for (const auto& d : s_in.d)
        if (d != 1) h.torsion.push_back(d);
    return h;
}

// Z tensor_{Z[C_n]} of the periodic resolution of Z over C_n:
// Z <-0- Z <-n- Z <-0- Z <-n- ...
inline FgAbGroup cyclic_group_homology(long n, std::size_t i)
{
    if (i == 0) return FgAbGroup::free(1);
    IntMatrix d_out{{i % 2 == 1 ? 0L : n}};
    IntMatrix d_in{{(i + 1) % 2 == 1 ? 0L : n}};
    return dense_homology(d_out, 1, d_in);
}

// Unnormalized (all tuples) bar differential d_n : Z[G^n] -> Z[G^{n-1}],
// tuples encoded in base |G|.
inline IntMatrix unnormalized_bar_differential(const dcft::FiniteGroup& g, std::size_t n)
{
    const std::size_t q = g.order();
    std::size_t rows = 1, cols = 1;
    for (std::size_t i = 0; i + 1 < n; ++i) rows *= q;
    cols = rows * q;
    IntMatrix d(rows, cols);
    std::vector<std::size_t> t(n);
    for (std::size_t j = 0; j < cols; ++j) {
        std::size_t x = j;
        for (std::size_t i = n; i-- > 0;) {
            t[i] = x % q;
            x /= q;
        }
        for (std::size_t f = 0; f <= n; ++f) {
            std::vector<std::size_t> face;
            for (std::size_t k = 0; k < n; ++k) {
                if (f == 0 && k == 0) continue;
                if (f == n && k == n - 1) continue;
                if (f > 0 && f < n && k == f) continue;
                face.push_back((f > 0 && f < n && k == f - 1) ? g.mul(t[f - 1], t[f]) : t[k]);
            }
            std::size_t row = 0;
            for (auto v : face) row = row * q + v;
            d(row, j) += (f % 2) ? -1 : 1;
        }
    }
    return d;
}

inline FgAbGroup unnormalized_group_homology(const dcft::FiniteGroup& g, std::size_t i)
{
    std::size_t rank = 1;
    for (std::size_t k = 0; k < i; ++k) rank *= g.order();
    IntMatrix d_out = i == 0 ? IntMatrix(0, 1) : unnormalized_bar_differential(g, i);
    return dense_homology(d_out, rank, unnormalized_bar_differential(g, i + 1));
}

// Künneth for groups written as cyclic summands (0 = Z).
inline std::vector<Integer> summands(const FgAbGroup& a)
{
    std::vector<Integer> s = a.torsion;
    for (std::size_t i = 0; i < a.free_rank; ++i) s.push_back(0);
    return s;
}

inline FgAbGroup tensor(const FgAbGroup& a, const FgAbGroup& b)
{
    std::size_t free = 0;
    std::vector<Integer> t;
    for (const auto& x : summands(a))
        for (const auto& y : summands(b)) {
            if (x == 0 && y == 0)
                ++free;
            else
                t.push_back(x == 0 ? y : y == 0 ? x : dcft::gcd(x, y));
        }
    return dcft::from_invariants(free, t);
}

inline FgAbGroup tor(const FgAbGroup& a, const FgAbGroup& b)
{
    std::vector<Integer> t;
    for (const auto& x : a.torsion)
        for (const auto& y : b.torsion) t.push_back(dcft::gcd(x, y));
    return dcft::from_invariants(0, t);
}

inline FgAbGroup kunneth(const std::vector<FgAbGroup>& ha, const std::vector<FgAbGroup>& hb, std::size_t n)
{
    FgAbGroup out;
    for (std::size_t p = 0; p <= n; ++p) out = dcft::direct_sum(out, tensor(ha[p], hb[n - p]));
    for (std::size_t p = 0; p + 1 <= n; ++p) out = dcft::direct_sum(out, tor(ha[p], hb[n - 1 - p]));
    return out;
}

// Class number of an imaginary quadratic field from the analytic formula
// h = -(w / 2|d|) * sum_{a=1}^{|d|-1} (d/a) a.
inline long analytic_class_number(long d)
{
    const long w = d == -3 ? 6 : d == -4 ? 4 : 2;
    long s = 0;
    for (long a = 1; a < -d; ++a) s += mpz_kronecker_si(Integer(d).get_mpz_t(), a) * a;
    return -w * s / (2 * -d);
}

// Residues x + y w modulo the rational integer m coprime to the norm form.
inline long units_mod_rational(long t, long n, long m)
{
    long count = 0;
    for (long x = 0; x < m; ++x)
        for (long y = 0; y < m; ++y) {
            long norm = ((x * x + t * x * y + n * y * y) % m + m) % m;
            if (std::gcd(norm, m) == 1) ++count;
        }
    return count;
}

// Number of roots of a monic integer polynomial modulo p, by exhaustion.
inline int roots_mod_p(const std::vector<long>& coeffs_low_to_high, long p)
{
    int r = 0;
    for (long x = 0; x < p; ++x) {
        long v = 0;
        for (auto it = coeffs_low_to_high.rbegin(); it != coeffs_low_to_high.rend(); ++it) v = ((v * x + *it) % p + p) % p;
        if (v == 0) ++r;
    }
    return r;
}

}  // namespace oracle
