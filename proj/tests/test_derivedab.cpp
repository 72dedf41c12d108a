#include <catch_amalgamated.hpp>

#include "dcft/derivedab.hpp"
#include "oracles.hpp"

using namespace dcft;

namespace {

FgAbGroup Z(long n) { return FgAbGroup::cyclic(n); }

GroupMap reduction(std::size_t from, std::size_t to)
{
    GroupMap f(from);
    for (std::size_t x = 0; x < from; ++x) f[x] = x % to;
    return f;
}

}  // namespace

TEST_CASE("derived abelianization chain model")
{
    DerivedAbelianization t = derived_abelianization(FiniteGroup(), 3);
    for (std::size_t n = 0; n <= 3; ++n) CHECK(t.chain.rank(n) == 0);

    DerivedAbelianization c2 = derived_abelianization(cyclic_group(2), 3);
    CHECK(c2.chain.ranks() == std::vector<std::size_t>{1, 1, 1, 1});
    CHECK_NOTHROW(validate(c2.chain));

    DerivedAbelianization s3 = derived_abelianization(catalog_group("S3"), 2);
    CHECK(s3.chain.rank(0) == 5);
    CHECK(s3.chain.rank(1) == 25);

    // Degree i agrees with the bar chains in degree i + 1, differential up
    // to the sign of an odd shift.
    ChainComplex bar = bar_chains(catalog_group("S3"), 3);
    CHECK(s3.chain.differential(1) == bar.differential(2).scaled(Integer(-1)));
    CHECK(s3.chain.differential(2) == bar.differential(3).scaled(Integer(-1)));
}

TEST_CASE("homotopy groups of the derived abelianization")
{
    CHECK(pi(derived_abelianization(cyclic_group(6), 1), 0) == Z(6));

    DerivedAbelianization s3 = derived_abelianization(catalog_group("S3"), 3);
    CHECK(pi(s3, 0) == Z(2));
    CHECK(pi(s3, 2) == Z(6));
    CHECK(pi(s3, 0) == oracle::unnormalized_group_homology(catalog_group("S3"), 1));
    CHECK(pi(s3, 2) == oracle::unnormalized_group_homology(catalog_group("S3"), 3));

    DerivedAbelianization c2 = derived_abelianization(cyclic_group(2), 3);
    CHECK(pi(c2, 1).is_trivial());
    CHECK(pi(c2, 2) == Z(2));
    CHECK(pi(c2, 1) == oracle::cyclic_group_homology(2, 2));
    CHECK(pi(c2, 2) == oracle::cyclic_group_homology(2, 3));
    CHECK_THROWS_AS(pi(c2, 3), DegreeOutOfRange);
}

TEST_CASE("pi_i equals H_{i+1} and pi_0 equals the abelianization on the catalog")
{
    for (const auto& g : group_catalog()) {
        INFO(g.label());
        DerivedAbelianization d = derived_abelianization(g, 3);
        CHECK(pi(d, 0) == abelianization(g));
        for (std::size_t i = 0; i <= 2; ++i) CHECK(pi(d, i) == group_homology(g, i + 1));
    }
}

TEST_CASE("transfer on the derived abelianization")
{
    FiniteGroup s3 = catalog_group("S3");
    for (std::size_t i = 0; i <= 2; ++i) CHECK(transfer_derived(s3, whole_group(s3), i) == AbHom::identity(group_homology(s3, i + 1)));

    FiniteGroup c4 = cyclic_group(4);
    AbHom t = transfer_derived(c4, generated_subgroup(c4, {2}), 0);
    CHECK(t.source == Z(4));
    CHECK(t.target == Z(2));
    CHECK(t.is_surjective());

    FiniteGroup v4 = direct_product(cyclic_group(2), cyclic_group(2));
    CHECK(transfer_derived(v4, generated_subgroup(v4, {2}), 0).is_zero());
}

TEST_CASE("transfer at pi_0 equals the Verlagerung on all catalog pairs")
{
    for (const auto& [g, h] : subgroup_pair_catalog()) {
        INFO(g.label() << " > " << h.label);
        FiniteGroup hg = subgroup_as_group(g, h);
        DerivedModel mg(g, 0), mh(hg, 0);
        AbHom phi_g = pi0_to_abelianization(g, mg.model);
        AbHom phi_h = pi0_to_abelianization(hg, mh.model);
        CHECK(phi_g.is_isomorphism());
        CHECK(phi_h.is_isomorphism());
        AbHom t = transfer_derived(g, h, 0);
        CHECK(compose(phi_h, t) == compose(verlagerung(g, h), phi_g));
        // Through pi_i = H_{i+1}: same matrices as the corestriction.
        for (std::size_t i = 0; i <= 1; ++i) CHECK(transfer_derived(g, h, i) == corestriction_map(g, h, i + 1));
    }
}

TEST_CASE("naturality of pi_0 along surjections")
{
    for (const char* name : {"S3", "D4", "Q8", "A4", "C6xC2", "Dic3", "C4:C4"}) {
        FiniteGroup g = catalog_group(name);
        for (const Subgroup& n : {center(g), commutator_subgroup(g)}) {
            INFO(name << " / " << n.label);
            Quotient q = quotient_group(g, n);
            AbHom on_pi = derived_map(g, q.group, q.projection, 0);
            DerivedModel mg(g, 0), mq(q.group, 0);
            CHECK(compose(pi0_to_abelianization(q.group, mq.model), on_pi) ==
                  compose(abelianization_map(g, q.group, q.projection), pi0_to_abelianization(g, mg.model)));
        }
    }
}

TEST_CASE("towers")
{
    CHECK_THROWS_AS(validate_tower({{cyclic_group(2), cyclic_group(4)}, {{0, 1, 1, 0}}}), InvalidInput);
    CHECK_THROWS_AS(validate_tower({{cyclic_group(2), cyclic_group(4)}, {{0, 0, 0, 0}}}), InvalidInput);
    CHECK_NOTHROW(validate_tower({{cyclic_group(2), cyclic_group(4)}, {reduction(4, 2)}}));

    FiniteQuotientTower tc = derived_series_tower(catalog_group("S3"));
    CHECK_NOTHROW(validate_tower(tc));
    REQUIRE(tc.levels.size() == 2);
    CHECK(tc.levels[0].order() == 2);
    CHECK(find_isomorphism(tc.levels[1], catalog_group("S3")).has_value());

    FiniteQuotientTower tq = derived_series_tower(catalog_group("Q8"));
    REQUIRE(tq.levels.size() == 2);
    CHECK(find_isomorphism(tq.levels[0], catalog_group("C2xC2")).has_value());

    FiniteQuotientTower ta = derived_series_tower(catalog_group("A4"));
    REQUIRE(ta.levels.size() == 2);
    CHECK(ta.levels[0].order() == 3);
    CHECK(derived_series_tower(cyclic_group(5)).levels.size() == 1);
}

TEST_CASE("profinite derived homotopy")
{
    for (const char* name : {"S3", "Q8", "C4"}) {
        FiniteGroup g = catalog_group(name);
        for (std::size_t i = 0; i <= 1; ++i) {
            auto p = profinite_derived_pi(constant_tower(g, 3), i);
            CHECK(p.stabilized);
            REQUIRE(p.limit.has_value());
            CHECK(*p.limit == profinite_complete(group_homology(g, i + 1)));
            // Stabilization is already visible with two levels.
            CHECK(profinite_derived_pi(constant_tower(g, 2), i).stabilized);
            CHECK_FALSE(profinite_derived_pi(constant_tower(g, 1), i).stabilized);
        }
    }

    FiniteQuotientTower t{{cyclic_group(2), cyclic_group(4), cyclic_group(8)}, {reduction(4, 2), reduction(8, 4)}};
    auto p = profinite_derived_pi(t, 0);
    CHECK(p.values == std::vector<FgAbGroup>{Z(2), Z(4), Z(8)});
    CHECK_FALSE(p.stabilized);
    CHECK_FALSE(p.limit.has_value());
    REQUIRE(p.transitions.size() == 2);
    for (const auto& m : p.transitions) {
        CHECK(m.is_well_defined());
        CHECK(m.is_surjective());
        CHECK_FALSE(m.is_isomorphism());
        CHECK(abs(m.matrix(0, 0)) == 1);
    }
    // Transitions compose to the map induced by the composite surjection.
    CHECK(compose(p.transitions[0], p.transitions[1]) == derived_map(cyclic_group(8), cyclic_group(2), reduction(8, 2), 0));

    auto triv = profinite_derived_pi(constant_tower(FiniteGroup(), 3), 0);
    CHECK(triv.stabilized);
    CHECK(*triv.limit == ProfiniteFgAb{});

    auto s3 = profinite_derived_pi(derived_series_tower(catalog_group("S3")), 0);
    CHECK(s3.stabilized);
    CHECK(*s3.limit == profinite_complete(Z(2)));
    auto s3_2 = profinite_derived_pi(derived_series_tower(catalog_group("S3")), 2);
    CHECK(s3_2.values == std::vector<FgAbGroup>{Z(2), Z(6)});
    CHECK_FALSE(s3_2.stabilized);
}
