#include <catch_amalgamated.hpp>

#include <random>

#include "dcft/grouphomology.hpp"
#include "dcft/simplicial.hpp"
#include "oracles.hpp"
#include "random_complex.hpp"

using namespace dcft;

namespace {

ChainComplex two_term(long a) { return ChainComplex::from_dense({1, 1}, {IntMatrix{{a}}}); }

// Number of order-preserving surjections [n] ->> [k] is C(n, k).
std::size_t binomial(std::size_t n, std::size_t k)
{
    std::size_t r = 1;
    for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// Checks that f : c -> N(Gamma c) is an isomorphism of complexes.
void check_unit_is_iso(const ChainComplex& c, std::size_t n_max)
{
    SimplicialAbGroup s = from_chains(c, n_max);
    CHECK_NOTHROW(validate_simplicial(s));
    NormalizedChains nc = normalized_chains_with_basis(s);
    REQUIRE(nc.complex.ranks() == c.ranks());
    ChainMap f = dold_kan_unit(c, n_max, nc);
    CHECK(is_chain_map(f, c, nc.complex));
    for (std::size_t n = 0; n <= n_max; ++n) {
        IntMatrix m = f.components[n].to_dense();
        REQUIRE(m.rows() == m.cols());
        if (m.rows() > 0) CHECK(abs(determinant(m)) == 1);
    }
}

std::vector<std::vector<std::uint32_t>> random_relabelling(const FiniteSimplicialSet& x, std::mt19937& rng)
{
    std::vector<std::vector<std::uint32_t>> perm(x.truncation() + 1);
    for (std::size_t n = 0; n <= x.truncation(); ++n) {
        perm[n].resize(x.size(n));
        for (std::uint32_t i = 0; i < perm[n].size(); ++i) perm[n][i] = i;
        std::shuffle(perm[n].begin(), perm[n].end(), rng);
    }
    return perm;
}

}  // namespace

TEST_CASE("simplex category helpers")
{
    CHECK(simplex::surjections(3, 1).size() == 3);
    CHECK(simplex::surjections(4, 2).size() == 6);
    for (std::size_t n = 0; n <= 5; ++n)
        for (std::size_t k = 0; k <= n; ++k) CHECK(simplex::surjections(n, k).size() == binomial(n, k));
    // s^0 d^0 = id on [1] (as maps of ordinals).
    CHECK(simplex::compose(simplex::codegeneracy(1, 0), simplex::coface(2, 0)) == SimplexMap{0, 1});
    auto em = simplex::factor(SimplexMap{0, 0, 2});
    CHECK(em.epi == SimplexMap{0, 0, 1});
    CHECK(em.image == SimplexMap{0, 2});
}

TEST_CASE("validate_simplicial")
{
    CHECK_NOTHROW(validate_simplicial(point_simplicial_set(4)));
    CHECK_NOTHROW(validate_simplicial(bar_construction(cyclic_group(2), 4)));
    CHECK_NOTHROW(validate_simplicial(bar_construction(catalog_group("S3"), 3)));
    CHECK_NOTHROW(validate_simplicial(circle(4)));
    CHECK_NOTHROW(validate_simplicial(sphere2(4)));
    CHECK_NOTHROW(validate_simplicial(free_abelian(bar_construction(cyclic_group(3), 3))));

    FiniteSimplicialSet x = bar_construction(cyclic_group(3), 3);
    FiniteSimplicialSet::IndexMap f = x.face(3, 2);
    std::swap(f[1], f[2]);
    x.set_face(3, 2, f);
    auto v = find_simplicial_violation(x);
    REQUIRE(v.has_value());
    CHECK(v->find("level 3") != std::string::npos);
    CHECK_THROWS_AS(validate_simplicial(x), ValidationError);

    SimplicialAbGroup s = from_chains(two_term(2), 3);
    s.set_face(2, 1, SparseIntMatrix(s.rank(1), s.rank(2)));
    auto w = find_simplicial_violation(s);
    REQUIRE(w.has_value());
    CHECK(w->find("d_0 d_1") == 0);
    CHECK(w->find("level 2") != std::string::npos);
}

TEST_CASE("normalized chains examples")
{
    ChainComplex z = normalized_chains(constant_simplicial(FgAbGroup::free(1), 3));
    CHECK(z.ranks() == std::vector<std::size_t>{1, 0, 0, 0});

    // Nondegenerate bar tuples avoid the identity: (|G| - 1)^n of them.
    ChainComplex b = normalized_chains(free_abelian(bar_construction(cyclic_group(3), 3)));
    CHECK(b.ranks() == std::vector<std::size_t>{1, 2, 4, 8});
    for (std::size_t i = 1; i <= 2; ++i) CHECK(homology(b, i) == oracle::cyclic_group_homology(3, i));

    check_unit_is_iso(two_term(2), 1);
    CHECK(normalized_chains(from_chains(two_term(2), 3)).ranks() == std::vector<std::size_t>{1, 1, 0, 0});
}

TEST_CASE("normalized and degenerate-quotient models agree")
{
    std::vector<SimplicialAbGroup> cases{free_abelian(bar_construction(cyclic_group(2), 4)),
                                         free_abelian(bar_construction(catalog_group("S3"), 3)),
                                         free_abelian(circle(3)), free_abelian(sphere2(4)),
                                         constant_simplicial(FgAbGroup::cyclic(5), 3), from_chains(two_term(6), 3)};
    std::mt19937 rng(5);
    for (int t = 0; t < 10; ++t) cases.push_back(from_chains(testing_support::random_known_complex(rng, 2, 2).complex, 3));
    for (const auto& s : cases) {
        ChainComplex a = normalized_chains(s), b = degenerate_quotient_chains(s);
        CHECK(a.ranks() == b.ranks());
        for (std::size_t i = 0; i < s.truncation(); ++i) {
            CHECK(homology(a, i) == homology(b, i));
            CHECK(homotopy_group(s, i) == homology(b, i));
        }
    }
}

TEST_CASE("from_chains examples")
{
    SimplicialAbGroup c = from_chains(ChainComplex({1}, {}), 3);
    for (std::size_t n = 0; n <= 3; ++n) CHECK(c.rank(n) == 1);
    for (std::size_t n = 1; n <= 3; ++n)
        for (std::size_t i = 0; i <= n; ++i) CHECK(c.face(n, i) == SparseIntMatrix::from_dense(IntMatrix{{1}}));

    ChainComplex z1({0, 1}, {SparseIntMatrix(0, 1)});
    SimplicialAbGroup s = from_chains(z1, 5);
    for (std::size_t n = 0; n <= 5; ++n) CHECK(s.rank(n) == n);
    CHECK_NOTHROW(validate_simplicial(s));
    CHECK(homotopy_group(s, 1) == FgAbGroup::free(1));

    CHECK_THROWS_AS(from_chains(two_term(2), 0), InvalidInput);
}

TEST_CASE("Dold-Kan round trip on random complexes")
{
    std::mt19937 rng(99);
    for (int trial = 0; trial < 25; ++trial) {
        const std::size_t top = 1 + trial % 4;
        auto k = testing_support::random_known_complex(rng, top, 2, 10);
        INFO("trial " << trial);
        check_unit_is_iso(k.complex, top);
    }
}

TEST_CASE("homotopy groups")
{
    SimplicialAbGroup c5 = constant_simplicial(FgAbGroup::cyclic(5), 3);
    CHECK(homotopy_group(c5, 0) == FgAbGroup::cyclic(5));
    CHECK(homotopy_group(c5, 1).is_trivial());
    CHECK(homotopy_group(c5, 2).is_trivial());
    CHECK_THROWS_AS(homotopy_group(c5, 3), DegreeOutOfRange);

    CHECK(homotopy_group(from_chains(two_term(2), 2), 0) == FgAbGroup::cyclic(2));

    // Reduced bar chains of Z/2 shifted down by one: pi_2 = H_3(Z/2).
    ChainComplex bar = bar_chains(cyclic_group(2), 4);
    std::vector<std::size_t> ranks = bar.ranks();
    ranks[0] = 0;
    std::vector<SparseIntMatrix> d{SparseIntMatrix(0, ranks[1])};
    for (std::size_t n = 2; n <= 4; ++n) d.push_back(bar.differential(n));
    ChainComplex shifted = shift(ChainComplex(ranks, d), -1);
    SimplicialAbGroup s = from_chains(shifted, 3);
    CHECK(homotopy_group(s, 2) == oracle::cyclic_group_homology(2, 3));
    CHECK(homotopy_group(s, 2) == FgAbGroup::cyclic(2));
    CHECK(homotopy_group(s, 1).is_trivial());
    CHECK(homotopy_group(s, 0) == FgAbGroup::cyclic(2));
}

TEST_CASE("bar construction")
{
    FiniteSimplicialSet t = bar_construction(FiniteGroup(), 4);
    for (std::size_t n = 0; n <= 4; ++n) CHECK(t.size(n) == 1);

    FiniteSimplicialSet b2 = bar_construction(cyclic_group(2), 3);
    CHECK(b2.size(2) == 4);
    CHECK(b2.size(2) - b2.nondegenerate_count(2) == 3);

    FiniteSimplicialSet b3 = bar_construction(cyclic_group(3), 4);
    std::size_t p = 1;
    for (std::size_t n = 0; n <= 4; ++n, p *= 3) CHECK(b3.size(n) == p);
    for (std::size_t n = 0; n <= 4; ++n) CHECK(b3.basepoint(n) == 0);
    CHECK_THROWS_AS(bar_construction(cyclic_group(10), 8, 1000), SizeGuardExceeded);
}

TEST_CASE("symmetric powers")
{
    // n = 1 gives the reduced chains of X.
    FiniteSimplicialSet s1 = circle(3);
    CHECK(sym_power_chains(s1, 1, 2) == reduced_chains(s1, 2));
    CHECK(homology(reduced_chains(s1, 1), 1) == FgAbGroup::free(1));
    for (std::size_t n = 1; n <= 3; ++n) CHECK(homology(sym_power_chains(s1, n, 1), 1) == FgAbGroup::free(1));

    FiniteSimplicialSet pt = point_simplicial_set(3);
    for (std::size_t n = 1; n <= 3; ++n)
        for (std::size_t d = 0; d <= 2; ++d) CHECK(homology(sym_power_chains(pt, n, 2), d).is_trivial());

    CHECK(homology(reduced_chains(sphere2(3), 2), 2) == FgAbGroup::free(1));
    CHECK_THROWS_AS(sym_power_chains(s1, 2, 3), InvalidInput);
    CHECK_THROWS_AS(sym_power_chains(bar_construction(cyclic_group(4), 3), 4, 2, 100), SizeGuardExceeded);
}

TEST_CASE("Dold-Thom check")
{
    auto c = dold_thom_check(circle(2), 3, 1);
    CHECK(c.stabilized);
    CHECK(c.stable_value == FgAbGroup::free(1));
    CHECK(c.matches);

    auto p = dold_thom_check(point_simplicial_set(2), 3, 1);
    for (const auto& v : p.values) CHECK(v.is_trivial());
    CHECK(p.matches);

    auto w = dold_thom_check(wedge_of_circles(2, 2), 3, 1);
    CHECK(w.stabilized);
    CHECK(w.stable_value == FgAbGroup::free(2));
    CHECK(w.reduced_homology == FgAbGroup::free(2));
    CHECK(w.matches);

    auto b = dold_thom_check(bar_construction(cyclic_group(2), 2), 3, 1);
    CHECK(b.matches);
    CHECK(b.reduced_homology == FgAbGroup::cyclic(2));
}

TEST_CASE("orbit counts and homology are invariant under relabelling")
{
    std::mt19937 rng(3);
    std::vector<FiniteSimplicialSet> xs{circle(3), wedge_of_circles(2, 3), sphere2(3),
                                        bar_construction(cyclic_group(2), 3), bar_construction(cyclic_group(3), 3)};
    for (const auto& x : xs) {
        FiniteSimplicialSet y = relabel(x, random_relabelling(x, rng));
        CHECK_NOTHROW(validate_simplicial(y));
        for (std::size_t n = 1; n <= 3; ++n) {
            CHECK(sym_power_orbit_counts(x, n, 3) == sym_power_orbit_counts(y, n, 3));
            ChainComplex a = sym_power_chains(x, n, 2), b = sym_power_chains(y, n, 2);
            CHECK(a.ranks() == b.ranks());
            for (std::size_t d = 0; d <= 2; ++d) CHECK(homology(a, d) == homology(b, d));
        }
    }
}

TEST_CASE("monotone stabilization of symmetric powers")
{
    std::vector<FiniteSimplicialSet> xs{circle(4), wedge_of_circles(2, 4), sphere2(4), bar_construction(cyclic_group(2), 4)};
    for (const auto& x : xs)
        for (std::size_t deg = 0; deg <= 2; ++deg) {
            const FgAbGroup first = homology(sym_power_chains(x, deg + 1, deg), deg);
            for (std::size_t n = deg + 2; n <= 4; ++n) CHECK(homology(sym_power_chains(x, n, deg), deg) == first);
        }
}

TEST_CASE("Dold-Kan round trip report")
{
    CHECK(dold_kan_round_trip(two_term(2), 1).ok());
    CHECK(dold_kan_round_trip(two_term(2), 3).ok());
    dcft::ComplexRng rng(4);
    for (int trial = 0; trial < 20; ++trial) {
        auto k = dcft::random_known_complex(rng, 1 + trial % 4, 2, 10);
        CHECK(dold_kan_round_trip(k.complex, k.complex.top_degree()).ok());
    }
}
