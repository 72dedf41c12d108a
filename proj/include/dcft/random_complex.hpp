#pragma once

// Random chain complexes with known homology: a direct sum of elementary
// pieces (Z in one degree, or Z --a--> Z) conjugated by random unimodular
// changes of basis in every degree. Draws use std::mt19937_64 directly so
// the sequence is the same under every standard library.

#include <cstdint>
#include <random>
#include <vector>

#include "dcft/abgroup.hpp"
#include "dcft/chain.hpp"

namespace dcft {

struct KnownComplex {
    ChainComplex complex;
    std::vector<FgAbGroup> homology;
};

class ComplexRng {
  public:
    explicit ComplexRng(std::uint64_t seed) : engine_(seed) {}

    // Uniform in [lo, hi].
    long uniform(long lo, long hi)
    {
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
        std::uint64_t x;
        do x = engine_();
        while (x >= limit);
        return lo + static_cast<long>(x % span);
    }

  private:
    std::mt19937_64 engine_;
};

inline void random_unimodular(ComplexRng& rng, std::size_t n, IntMatrix& p, IntMatrix& p_inv, int steps)
{
    p = IntMatrix::identity(n);
    p_inv = IntMatrix::identity(n);
    if (n < 2) return;
    for (int s = 0; s < steps; ++s) {
        const auto i = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(n) - 1));
        const auto j = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(n) - 1));
        if (i == j) continue;
        const long coin = rng.uniform(0, 2);
        if (coin == 0) {
            p.swap_rows(i, j);
            p_inv.swap_cols(i, j);
        } else {
            const Integer q = coin == 1 ? 1 : -1;
            p.add_row(i, j, q);
            p_inv.add_col(j, i, -q);
        }
    }
}

inline bool entries_bounded(const IntMatrix& m, long bound)
{
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (abs(m(i, j)) > bound) return false;
    return true;
}

inline KnownComplex random_known_complex(ComplexRng& rng, std::size_t top, std::size_t max_pieces = 3, long bound = 10,
                                         int steps = 4)
{
    for (;;) {
        std::vector<std::size_t> ranks(top + 1, 0);
        // Pieces: (degree, a) with a = 0 meaning a lone Z in that degree,
        // otherwise Z --a--> Z from degree to degree - 1.
        std::vector<std::pair<std::size_t, long>> list;
        for (std::size_t n = 0; n <= top; ++n) {
            for (long p = rng.uniform(0, static_cast<long>(max_pieces)); p > 0; --p) {
                const long a = n == 0 ? 0 : rng.uniform(-4, 4);
                list.push_back({n, a});
                ranks[n] += 1;
                if (a != 0) ranks[n - 1] += 1;
            }
        }
        std::vector<IntMatrix> d;
        for (std::size_t n = 1; n <= top; ++n) d.emplace_back(ranks[n - 1], ranks[n]);
        std::vector<std::size_t> used(top + 1, 0);
        std::vector<FgAbGroup> hom(top + 1);
        for (auto [n, a] : list) {
            const std::size_t col = used[n]++;
            if (a == 0) {
                hom[n] = direct_sum(hom[n], FgAbGroup::free(1));
                continue;
            }
            const std::size_t row = used[n - 1]++;
            d[n - 1](row, col) = a;
            hom[n - 1] = direct_sum(hom[n - 1], FgAbGroup::cyclic(abs(Integer(a))));
        }
        std::vector<IntMatrix> p(top + 1), p_inv(top + 1);
        for (std::size_t n = 0; n <= top; ++n) random_unimodular(rng, ranks[n], p[n], p_inv[n], steps);
        bool ok = true;
        for (std::size_t n = 1; n <= top; ++n) {
            d[n - 1] = p[n - 1] * d[n - 1] * p_inv[n];
            ok = ok && entries_bounded(d[n - 1], bound);
        }
        if (!ok) continue;
        return {ChainComplex::from_dense(ranks, d), hom};
    }
}

}  // namespace dcft
