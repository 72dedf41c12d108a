#include <catch_amalgamated.hpp>

#include <random>

#include "dcft/chain.hpp"
#include "dcft/grouphomology.hpp"
#include "dcft/homology.hpp"
#include "oracles.hpp"
#include "random_complex.hpp"

using namespace dcft;

namespace {

ChainComplex two_term(long a) { return ChainComplex::from_dense({1, 1}, {IntMatrix{{a}}}); }

ChainComplex reduced(const ChainComplex& c)
{
    std::vector<std::size_t> ranks = c.ranks();
    ranks[0] = 0;
    std::vector<SparseIntMatrix> d;
    for (std::size_t n = 1; n <= c.top_degree(); ++n)
        d.push_back(n == 1 ? SparseIntMatrix(0, ranks[1]) : c.differential(n));
    return ChainComplex(ranks, d);
}

}  // namespace

TEST_CASE("validate")
{
    CHECK_NOTHROW(validate(two_term(0)));
    auto bad = ChainComplex::from_dense({1, 1, 1}, {IntMatrix{{1}}, IntMatrix{{1}}});
    auto v = find_violation(bad);
    REQUIRE(v.has_value());
    CHECK(v->degree == 2);
    CHECK_THROWS_AS(validate(bad), ValidationError);
    CHECK_NOTHROW(validate(bar_chains(cyclic_group(2), 5)));
    CHECK_THROWS_AS(ChainComplex::from_dense({1, 2}, {IntMatrix{{1}}}), InvalidInput);
}

TEST_CASE("homology examples")
{
    ChainComplex c = two_term(2);
    CHECK(homology(c, 0) == FgAbGroup::cyclic(2));
    CHECK(homology(c, 1).is_trivial());
    for (const auto& h : homology_all(ChainComplex::zero(4))) CHECK(h.is_trivial());
    CHECK_THROWS_AS(homology(c, 2), DegreeOutOfRange);

    ChainComplex bar = bar_chains(cyclic_group(2), 4);
    for (std::size_t i = 1; i <= 3; ++i) CHECK(homology(bar, i) == oracle::cyclic_group_homology(2, i));
    CHECK(homology(bar, 1) == FgAbGroup::cyclic(2));
    CHECK(homology(bar, 2).is_trivial());
    CHECK(homology(bar, 3) == FgAbGroup::cyclic(2));
    CHECK(bar.reliable(3));
    CHECK_FALSE(bar.reliable(4));
}

TEST_CASE("homology of random complexes with known answer")
{
    std::mt19937 rng(21);
    for (int trial = 0; trial < 150; ++trial) {
        auto k = testing_support::random_known_complex(rng, 4);
        CHECK_NOTHROW(validate(k.complex));
        auto h = homology_all(k.complex);
        for (std::size_t n = 0; n <= 4; ++n) {
            // Top degree has no incoming differential, so the answer is
            // exact there as well for these finite complexes.
            CHECK(h[n] == k.homology[n]);
            IntMatrix out = n == 0 ? IntMatrix(0, k.complex.rank(0)) : k.complex.differential(n).to_dense();
            IntMatrix in = n < 4 ? k.complex.differential(n + 1).to_dense() : IntMatrix(k.complex.rank(n), 0);
            CHECK(h[n] == oracle::dense_homology(out, k.complex.rank(n), in));
        }
    }
}

TEST_CASE("homology generators and coordinates are inverse")
{
    std::mt19937 rng(8);
    for (int trial = 0; trial < 60; ++trial) {
        auto k = testing_support::random_known_complex(rng, 3);
        HomologyModel m(k.complex, true);
        for (std::size_t n = 0; n <= 3; ++n) {
            auto gens = m.generators(n);
            REQUIRE(gens.size() == m.group(n).generator_count());
            for (std::size_t g = 0; g < gens.size(); ++g) {
                // Each generator is a cycle.
                if (n > 0) CHECK(k.complex.differential(n).apply(gens[g]) == std::vector<Integer>(k.complex.rank(n - 1)));
                auto c = m.coordinates(n, gens[g]);
                for (std::size_t i = 0; i < c.size(); ++i) CHECK(c[i] == (i == g ? 1 : 0));
            }
            // Boundaries have zero coordinates.
            if (n < 3) {
                const auto& d = k.complex.differential(n + 1);
                for (std::size_t j = 0; j < d.cols(); ++j) {
                    std::vector<Integer> e(d.cols());
                    e[j] = 1;
                    auto c = m.coordinates(n, d.apply(e));
                    for (const auto& v : c) CHECK(v == 0);
                }
            }
        }
    }
}

TEST_CASE("shift")
{
    ChainComplex c = two_term(3);
    CHECK(shift(c, 0) == c);

    ChainComplex bar = reduced(bar_chains(cyclic_group(2), 3));
    ChainComplex s = shift(bar, -1);
    CHECK(homology(s, 0) == FgAbGroup::cyclic(2));
    CHECK(s.dropped_degrees() == std::vector<long>{0});

    ChainComplex z2({0, 0, 1}, {SparseIntMatrix(0, 0), SparseIntMatrix(0, 1)});
    ChainComplex z1 = shift(z2, -1);
    CHECK(z1.ranks() == std::vector<std::size_t>{0, 1});
    CHECK(homology(z1, 1) == FgAbGroup::free(1));

    // Dropping a degree with a nonzero outgoing differential keeps the
    // homology of every retained degree.
    ChainComplex t = ChainComplex::from_dense({1, 2, 1}, {IntMatrix{{2, 0}}, IntMatrix{{0}, {5}}});
    ChainComplex ts = shift(t, -1);
    CHECK(ts.kernel_replaced());
    CHECK(homology(ts, 0) == homology(t, 1));
}

TEST_CASE("shift round trip and homology shift on random complexes")
{
    std::mt19937 rng(12);
    for (int trial = 0; trial < 60; ++trial) {
        auto k = testing_support::random_known_complex(rng, 3);
        for (long j = 1; j <= 2; ++j) {
            ChainComplex up = shift(k.complex, j);
            CHECK(shift(up, -j) == k.complex);
            for (std::size_t n = 0; n < 3; ++n) CHECK(homology(up, n + j) == homology(k.complex, n));
            ChainComplex down = shift(k.complex, -j);
            for (std::size_t n = 0; n + j <= 3; ++n) CHECK(homology(down, n) == homology(k.complex, n + j));
        }
    }
}

TEST_CASE("connective truncation is idempotent")
{
    std::mt19937 rng(2);
    for (int trial = 0; trial < 100; ++trial) {
        auto k = testing_support::random_known_complex(rng, 3);
        ChainComplex t = connective_truncate(k.complex);
        CHECK(t == k.complex);
        CHECK(connective_truncate(t) == t);
    }
    ChainComplex s = shift(bar_chains(cyclic_group(3), 3), -2);
    CHECK(connective_truncate(connective_truncate(s)) == connective_truncate(s));
}

TEST_CASE("homology commutes with direct sums")
{
    std::mt19937 rng(30);
    for (int trial = 0; trial < 50; ++trial) {
        auto a = testing_support::random_known_complex(rng, 3);
        auto b = testing_support::random_known_complex(rng, 2);
        ChainComplex s = direct_sum(a.complex, b.complex);
        CHECK_NOTHROW(validate(s));
        for (std::size_t n = 0; n <= 2; ++n) CHECK(homology(s, n) == direct_sum(homology(a.complex, n), homology(b.complex, n)));
    }
}

TEST_CASE("Euler characteristic equals the alternating sum of Betti numbers")
{
    std::mt19937 rng(17);
    for (int trial = 0; trial < 100; ++trial) {
        auto k = testing_support::random_known_complex(rng, 4);
        long betti = 0;
        auto h = homology_all(k.complex);
        for (std::size_t n = 0; n < h.size(); ++n) betti += (n % 2 ? -1L : 1L) * static_cast<long>(h[n].free_rank);
        CHECK(euler_characteristic(k.complex) == betti);
    }
}

TEST_CASE("integer overflow falls back to arbitrary precision")
{
    const Integer big("123456789012345678901234567890");
    SparseIntMatrix d(1, 1);
    d.set_column(0, {{0, big}});
    ChainComplex c({1, 1}, {d});
    CHECK(homology(c, 0) == FgAbGroup::cyclic(big));

    // Entries that fit in int64 individually but whose products do not.
    const Integer e("3037000500");
    SparseIntMatrix m(2, 2);
    m.set_column(0, {{0, Integer(1)}, {1, e}});
    m.set_column(1, {{0, e}, {1, Integer(1)}});
    ChainComplex c3({2, 2}, {m});
    CHECK(homology(c3, 0) == FgAbGroup::cyclic(abs(1 - e * e)));
}
