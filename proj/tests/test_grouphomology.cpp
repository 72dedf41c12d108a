#include <catch_amalgamated.hpp>

#include <map>
#include <random>

#include "dcft/grouphomology.hpp"
#include "oracles.hpp"

using namespace dcft;

namespace {

FgAbGroup Z(long n) { return FgAbGroup::cyclic(n); }

// Alternative representatives: the largest element of each coset, except
// that H keeps the identity.
CosetRepresentatives largest_representatives(const FiniteGroup& g, const Subgroup& h)
{
    RightCosets rc = right_cosets(g, h);
    CosetRepresentatives reps(rc.smallest.size(), 0);
    for (std::size_t x = 0; x < g.order(); ++x)
        if (rc.coset_of[x] != 0) reps[rc.coset_of[x]] = x;
    return reps;
}

}  // namespace

TEST_CASE("catalog: all groups of order at most 16, pairwise non-isomorphic")
{
    auto cat = group_catalog();
    // Known numbers of isomorphism types for orders 1..16.
    const std::map<std::size_t, std::size_t> expected{{1, 1},  {2, 1},  {3, 1},  {4, 2},  {5, 1},  {6, 2},
                                                      {7, 1},  {8, 5},  {9, 2},  {10, 2}, {11, 1}, {12, 5},
                                                      {13, 1}, {14, 2}, {15, 1}, {16, 14}};
    std::map<std::size_t, std::size_t> counts;
    for (const auto& g : cat) ++counts[g.order()];
    CHECK(counts == expected);

    for (std::size_t a = 0; a < cat.size(); ++a)
        for (std::size_t b = a + 1; b < cat.size(); ++b) {
            if (cat[a].order() != cat[b].order()) continue;
            INFO(cat[a].label() << " vs " << cat[b].label());
            CHECK_FALSE(find_isomorphism(cat[a], cat[b]).has_value());
        }
}

TEST_CASE("isomorphism search finds relabellings")
{
    std::mt19937 rng(1);
    for (const char* name : {"S3", "Q8", "A4", "C4oD4"}) {
        FiniteGroup g = catalog_group(name);
        std::vector<std::size_t> perm(g.order());
        for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
        std::shuffle(perm.begin() + 1, perm.end(), rng);
        CHECK(find_isomorphism(g, relabel(g, perm)).has_value());
    }
}

TEST_CASE("invalid tables are rejected")
{
    CHECK_THROWS_AS(FiniteGroup(2, {0, 1, 1, 1}), InvalidInput);
    CHECK_THROWS_AS(FiniteGroup(2, {1, 0, 0, 1}), InvalidInput);
    // Latin square with identity 0 that is not associative (order 5 loop).
    std::vector<std::uint32_t> loop{0, 1, 2, 3, 4, 1, 0, 3, 4, 2, 2, 4, 0, 1, 3, 3, 2, 4, 0, 1, 4, 3, 1, 2, 0};
    CHECK_THROWS_AS(FiniteGroup(5, loop), InvalidInput);
}

TEST_CASE("abelianization examples")
{
    CHECK(abelianization(cyclic_group(6)) == Z(6));

    // Commutator closure oracles.
    FiniteGroup s3 = catalog_group("S3");
    CHECK(commutator_subgroup(s3).order() == 3);
    CHECK(abelianization(s3) == Z(2));

    FiniteGroup q8 = catalog_group("Q8");
    Subgroup c = commutator_subgroup(q8);
    CHECK(c.order() == 2);
    CHECK(c.elements == center(q8).elements);
    CHECK(abelianization(q8) == from_invariants(0, {2, 2}));
}

TEST_CASE("bar chains: ranks and d^2 = 0")
{
    CHECK(bar_chains(FiniteGroup(), 3).ranks() == std::vector<std::size_t>{1, 0, 0, 0});
    CHECK(bar_chains(cyclic_group(2), 4).ranks() == std::vector<std::size_t>{1, 1, 1, 1, 1});
    CHECK(bar_chains(cyclic_group(3), 2).rank(2) == 4);
    for (const auto& g : group_catalog()) {
        if (g.order() > 8) continue;
        CHECK_NOTHROW(validate(bar_chains(g, 4)));
    }
    CHECK_NOTHROW(validate(bar_chains(cyclic_group(2), 5)));
}

TEST_CASE("bar chains size guard")
{
    CHECK_THROWS_AS(bar_chains(catalog_group("C2^4"), 6), SizeGuardExceeded);
    CHECK_THROWS_AS(bar_chains(cyclic_group(5), 3, 20), SizeGuardExceeded);
}

TEST_CASE("homology of cyclic groups against the periodic resolution")
{
    for (long n = 2; n <= 6; ++n)
        for (std::size_t i = 0; i <= 4; ++i) {
            INFO("n = " << n << ", i = " << i);
            CHECK(group_homology(cyclic_group(n), i) == oracle::cyclic_group_homology(n, i));
        }
    CHECK(group_homology(FiniteGroup(), 1).is_trivial());
    CHECK(group_homology(FiniteGroup(), 2).is_trivial());
}

TEST_CASE("homology of S3 and Q8 against the unnormalized bar complex")
{
    FiniteGroup s3 = catalog_group("S3"), q8 = catalog_group("Q8");
    for (std::size_t i = 1; i <= 3; ++i) {
        INFO("S3, i = " << i);
        CHECK(group_homology(s3, i) == oracle::unnormalized_group_homology(s3, i));
    }
    for (std::size_t i = 1; i <= 2; ++i) {
        INFO("Q8, i = " << i);
        CHECK(group_homology(q8, i) == oracle::unnormalized_group_homology(q8, i));
    }
    CHECK(group_homology(s3, 1) == Z(2));
    CHECK(group_homology(s3, 2).is_trivial());
    CHECK(group_homology(s3, 3) == Z(6));
    CHECK(group_homology(q8, 1) == from_invariants(0, {2, 2}));
    CHECK(group_homology(q8, 2).is_trivial());
}

TEST_CASE("Kunneth for products of cyclic groups")
{
    auto hom = [](const FiniteGroup& g, std::size_t top) {
        std::vector<FgAbGroup> h;
        for (std::size_t i = 0; i <= top; ++i) h.push_back(group_homology(g, i));
        return h;
    };
    FiniteGroup c2 = cyclic_group(2), c3 = cyclic_group(3), c4 = cyclic_group(4);
    auto h2 = hom(c2, 3), h3 = hom(c3, 3), h4 = hom(c4, 3);
    CHECK(oracle::kunneth(h2, h2, 2) == Z(2));
    for (std::size_t n = 1; n <= 3; ++n) {
        CHECK(group_homology(direct_product(c2, c2), n) == oracle::kunneth(h2, h2, n));
        CHECK(group_homology(direct_product(c2, c3), n) == oracle::kunneth(h2, h3, n));
    }
    for (std::size_t n = 1; n <= 2; ++n) CHECK(group_homology(direct_product(c4, c2), n) == oracle::kunneth(h4, h2, n));
}

TEST_CASE("H_1 equals the abelianization on the whole catalog")
{
    for (const auto& g : group_catalog()) {
        INFO(g.label());
        CHECK(group_homology(g, 1) == abelianization(g));
    }
}

TEST_CASE("homology is stable under the truncation level")
{
    for (const char* name : {"C4", "S3", "C2xC2", "Q8", "D4"}) {
        FiniteGroup g = catalog_group(name);
        for (std::size_t i = 1; i <= 2; ++i) {
            INFO(name << " i = " << i);
            CHECK(homology(bar_chains(g, i + 1), i) == homology(bar_chains(g, i + 2), i));
        }
    }
}

TEST_CASE("homology is invariant under relabelling the table")
{
    std::mt19937 rng(4);
    for (const char* name : {"S3", "Q8", "D4", "A4", "C6xC2"}) {
        FiniteGroup g = catalog_group(name);
        std::vector<std::size_t> perm(g.order());
        for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
        std::shuffle(perm.begin() + 1, perm.end(), rng);
        FiniteGroup r = relabel(g, perm);
        for (std::size_t i = 1; i <= 2; ++i) CHECK(group_homology(g, i) == group_homology(r, i));
        CHECK(abelianization(g) == abelianization(r));
    }
}

TEST_CASE("restriction examples")
{
    FiniteGroup s3 = catalog_group("S3");
    CHECK(restriction_map(s3, whole_group(s3), 1) == AbHom::identity(Z(2)));
    CHECK(restriction_map(s3, whole_group(s3), 3) == AbHom::identity(Z(6)));

    Subgroup a3 = generated_subgroup(s3, {2});
    REQUIRE(a3.order() == 3);
    AbHom r = restriction_map(s3, a3, 1);
    CHECK(r.source == Z(3));
    CHECK(r.target == Z(2));
    CHECK(r.is_zero());

    FiniteGroup c4 = cyclic_group(4);
    Subgroup c2 = generated_subgroup(c4, {2});
    AbHom inc = restriction_map(c4, c2, 1);
    CHECK(inc.source == Z(2));
    CHECK(inc.target == Z(4));
    // Chain level: [2] is the image of the generator [1] of C2, and
    // [2] ~ 2[1] in H_1(C4).
    CHECK(inc.matrix(0, 0) == 2);
    CHECK(inc.is_well_defined());
}

TEST_CASE("Verlagerung examples")
{
    FiniteGroup c4 = cyclic_group(4);
    Subgroup c2 = generated_subgroup(c4, {2});
    AbHom v = verlagerung(c4, c2);
    CHECK(v.is_surjective());
    // Ver(g) = g^2: the generator 1 of C4 goes to 2, the generator of C2.
    CHECK(v.matrix(0, 0) == 1);

    FiniteGroup s3 = catalog_group("S3");
    CHECK(verlagerung(s3, whole_group(s3)) == AbHom::identity(Z(2)));
    CHECK(verlagerung(s3, generated_subgroup(s3, {2})).is_zero());

    FiniteGroup v4 = direct_product(cyclic_group(2), cyclic_group(2));
    CHECK(verlagerung(v4, generated_subgroup(v4, {2})).is_zero());
}

TEST_CASE("corestriction examples")
{
    FiniteGroup s3 = catalog_group("S3");
    CHECK(corestriction_map(s3, whole_group(s3), 1) == AbHom::identity(Z(2)));

    FiniteGroup c4 = cyclic_group(4);
    Subgroup c2 = generated_subgroup(c4, {2});
    CHECK(corestriction_map(c4, c2, 1).is_surjective());

    FiniteGroup v4 = direct_product(cyclic_group(2), cyclic_group(2));
    CHECK(corestriction_map(v4, generated_subgroup(v4, {2}), 1).is_zero());
}

TEST_CASE("functoriality on the subgroup pair catalog")
{
    for (const auto& [g, h] : subgroup_pair_catalog()) {
        const Integer idx = static_cast<long>(index_of(g, h));
        FiniteGroup hg = subgroup_as_group(g, h);
        for (std::size_t i = 0; i <= 2; ++i) {
            INFO(g.label() << " > " << h.label << ", i = " << i);
            AbHom res = restriction_map(g, h, i);
            AbHom cores = corestriction_map(g, h, i);
            CHECK(res.is_well_defined());
            CHECK(cores.is_well_defined());
            CHECK(compose(res, cores) == AbHom::identity(group_homology(g, i)).scaled(idx));
            // Independence of the representatives.
            CHECK(corestriction_map(g, h, i, largest_representatives(g, h)) == cores);
        }
        // Degree 1 against the Schreier transfer.
        BarHomology bg(g, 1), bh(hg, 1);
        AbHom phi_g = h1_to_abelianization(g, bg.model);
        AbHom phi_h = h1_to_abelianization(hg, bh.model);
        CHECK(phi_g.is_isomorphism());
        CHECK(phi_h.is_isomorphism());
        AbHom cores = induced_map(bar_transfer(g, h, 1, default_representatives(g, h)), bg.model, bh.model, 1);
        INFO(g.label() << " > " << h.label);
        CHECK(compose(phi_h, cores) == compose(verlagerung(g, h), phi_g));
    }
}
