#include <catch_amalgamated.hpp>

#include <set>

#include "dcft/numberfield.hpp"
#include "oracles.hpp"

using namespace dcft;

namespace {

FgAbGroup Z(long n) { return FgAbGroup::cyclic(n); }

const std::vector<long> kDiscriminants{-3, -4, -20, -23, -31, -47, -84};

bool fundamental_by_factoring(long d)
{
    auto squarefree = [](long m) {
        m = m < 0 ? -m : m;
        for (long p = 2; p * p <= m; ++p)
            if (m % (p * p) == 0) return false;
        return true;
    };
    if (((d % 4) + 4) % 4 == 1) return squarefree(d);
    if (d % 4 != 0) return false;
    long m = d / 4, r = ((m % 4) + 4) % 4;
    return (r == 2 || r == 3) && squarefree(m);
}

// Does the form represent n with some x, y in a box?
bool represents(const QuadForm& f, long n, long box)
{
    for (long x = -box; x <= box; ++x)
        for (long y = -box; y <= box; ++y)
            if (f(x, y) == n) return true;
    return false;
}

}  // namespace

TEST_CASE("reduced forms")
{
    CHECK(reduced_forms(-4) == std::vector<QuadForm>{{1, 0, 1}});
    CHECK(reduced_forms(-20) == std::vector<QuadForm>{{1, 0, 5}, {2, 2, 3}});
    CHECK(reduced_forms(-23) == std::vector<QuadForm>{{1, 1, 6}, {2, 1, 3}, {2, -1, 3}});
    CHECK_THROWS_AS(reduced_forms(-12), InvalidInput);
    CHECK_THROWS_AS(reduced_forms(5), InvalidInput);
    CHECK_THROWS_AS(reduced_forms(-7 * 4), InvalidInput);

    for (long d : kDiscriminants)
        for (const auto& f : reduced_forms(d)) {
            CHECK(f.discriminant() == d);
            CHECK(is_reduced(f));
            CHECK(reduce_form(f) == f);
        }
    CHECK(reduce_form({6, 1, 1}) == QuadForm{1, 1, 6});
    CHECK(reduce_form({3, -1, 2}) == QuadForm{2, 1, 3});
}

TEST_CASE("reduction preserves the class")
{
    // Applying random SL2(Z) moves and reducing returns the same form.
    for (long d : kDiscriminants)
        for (const auto& f : reduced_forms(d)) {
            QuadForm g = f;
            for (int k = 1; k <= 6; ++k) {
                // (x, y) -> (x + k y, y), then (x, y) -> (-y, x).
                g = {g.a, g.b + 2 * k * g.a, g(k, 1)};
                g = {g.c, -g.b, g.a};
                CHECK(g.discriminant() == d);
                CHECK(reduce_form(g) == f);
            }
        }
}

TEST_CASE("composition examples")
{
    CHECK(compose_forms({1, 0, 5}, {2, 2, 3}, -20) == QuadForm{2, 2, 3});
    CHECK(compose_forms({2, 2, 3}, {2, 2, 3}, -20) == QuadForm{1, 0, 5});
    CHECK(compose_forms({2, 1, 3}, {2, -1, 3}, -23) == QuadForm{1, 1, 6});
    CHECK(compose_forms({2, 1, 3}, {2, 1, 3}, -23) == QuadForm{2, -1, 3});
    CHECK_THROWS_AS(compose_forms({2, 1, 3}, {1, 0, 5}, -23), InvalidInput);
}

TEST_CASE("composition is a group law on every acceptance discriminant")
{
    for (long d : kDiscriminants) {
        INFO("d = " << d);
        auto forms = reduced_forms(d);
        const QuadForm e = principal_form(d);
        for (const auto& f : forms) {
            CHECK(compose_forms(e, f, d) == f);
            CHECK(compose_forms(f, f.inverse(), d) == e);
            for (const auto& g : forms) {
                CHECK(compose_forms(f, g, d) == compose_forms(g, f, d));
                for (const auto& h : forms)
                    CHECK(compose_forms(compose_forms(f, g, d), h, d) == compose_forms(f, compose_forms(g, h, d), d));
            }
        }
    }
}

TEST_CASE("class groups")
{
    CHECK(class_group(-23).group == Z(3));
    CHECK(class_group(-20).group == Z(2));
    IdealClassGroup c84 = class_group(-84);
    CHECK(c84.group == direct_sum(Z(2), Z(2)));
    for (std::size_t i = 0; i < c84.order(); ++i) CHECK(c84.element_order(i) <= 2);
    CHECK(class_group(-47).group == Z(5));
    CHECK(class_group(-4).group.is_trivial());

    for (long d : kDiscriminants) {
        IdealClassGroup cl = class_group(d);
        CHECK(cl.group.order() == Integer(static_cast<long>(cl.forms.size())));
        CHECK(cl.forms[0] == principal_form(d));
        // Logs are a bijection compatible with composition.
        std::set<std::vector<Integer>> seen(cl.log.begin(), cl.log.end());
        CHECK(seen.size() == cl.order());
        for (std::size_t i = 0; i < cl.order(); ++i)
            for (std::size_t j = 0; j < cl.order(); ++j) {
                std::vector<Integer> s = cl.log[i];
                for (std::size_t k = 0; k < s.size(); ++k) s[k] = mod(s[k] + cl.log[j][k], cl.group.torsion[k]);
                CHECK(s == cl.log[cl.table[i][j]]);
            }
        for (std::size_t k = 0; k < cl.generators.size(); ++k)
            CHECK(Integer(static_cast<long>(cl.element_order(cl.generators[k]))) == cl.group.torsion[k]);
    }
}

TEST_CASE("class numbers agree with the analytic formula for -500 <= d < 0")
{
    std::size_t count = 0;
    for (long d = -500; d < 0; ++d) {
        CHECK(is_fundamental_discriminant(d) == fundamental_by_factoring(d));
        if (!fundamental_by_factoring(d)) continue;
        ++count;
        INFO("d = " << d);
        CHECK(static_cast<long>(class_number(d)) == oracle::analytic_class_number(d));
    }
    CHECK(count > 100);
    CHECK(class_number(-4) == 1);
    CHECK(class_number(-20) == 2);
    CHECK(class_number(-23) == 3);
    CHECK(class_number(-47) == 5);
}

TEST_CASE("units")
{
    CHECK(unit_group(-4) == Z(4));
    CHECK(unit_group(-3) == Z(6));
    CHECK(unit_group(-20) == Z(2));
    for (long d : kDiscriminants) {
        ImagQuadField f(d);
        const QuadInt u = unit_generator(f);
        CHECK(f.norm(u) == 1);
        // The generator has exactly the stated order.
        QuadInt p = u;
        Integer k = 1;
        while (!(p == QuadInt{1, 0})) {
            p = f.mul(p, u);
            ++k;
        }
        CHECK(k == unit_group(d).order());
    }
}

TEST_CASE("ideals")
{
    ImagQuadField qi(-4), q5(-20);
    Ideal five = principal_ideal(qi, {5, 0});
    CHECK(five == Ideal{5, 0, 5});
    CHECK(five.norm() == 25);
    Ideal one_plus_i = principal_ideal(qi, {1, 1});
    CHECK(one_plus_i.norm() == 2);
    CHECK(ideal_mul(qi, one_plus_i, one_plus_i) == principal_ideal(qi, {2, 0}));

    Ideal p2 = ideal_from_generators(q5, {{2, 0}, {1, 1}});
    CHECK(p2 == Ideal{2, 1, 1});
    CHECK_FALSE(principal_generator(q5, p2).has_value());
    CHECK(ideal_mul(q5, p2, p2) == principal_ideal(q5, {2, 0}));
    CHECK(ideal_to_form(q5, p2) == QuadForm{2, 2, 3});

    CHECK_NOTHROW(make_ideal(q5, 2, 1, 1));
    CHECK_NOTHROW(make_ideal(q5, 3, 1, 1));
    CHECK_THROWS_AS(make_ideal(q5, 5, 1, 1), InvalidInput);
    CHECK_THROWS_AS(make_ideal(q5, 4, 1, 2), InvalidInput);
    CHECK_THROWS_AS(ideal_from_generators(q5, {{0, 0}}), InvalidInput);
}

TEST_CASE("ideals and forms correspond")
{
    for (long d : kDiscriminants) {
        INFO("d = " << d);
        ImagQuadField f(d);
        IdealClassGroup cl = class_group(d);
        for (std::size_t i = 0; i < cl.order(); ++i) {
            Ideal a = form_to_ideal(f, cl.forms[i]);
            CHECK(a.norm() == cl.forms[i].a);
            CHECK(ideal_to_form(f, a) == cl.forms[i]);
            CHECK(principal_generator(f, a).has_value() == (i == 0));
            for (std::size_t j = 0; j < cl.order(); ++j) {
                Ideal b = form_to_ideal(f, cl.forms[j]);
                CHECK(ideal_to_form(f, ideal_mul(f, a, b)) == cl.forms[cl.table[i][j]]);
            }
        }
        // Principal ideals map to the principal form.
        for (long x = -4; x <= 4; ++x)
            for (long y = -3; y <= 3; ++y) {
                if (x == 0 && y == 0) continue;
                Ideal p = principal_ideal(f, {x, y});
                CHECK(p.norm() == f.norm({x, y}));
                CHECK(ideal_to_form(f, p) == principal_form(d));
                auto g = principal_generator(f, p);
                REQUIRE(g.has_value());
                CHECK(principal_ideal(f, *g) == p);
            }
    }
}

TEST_CASE("residue units")
{
    ImagQuadField qi(-4), q5(-20);
    CHECK(residue_units(qi, principal_ideal(qi, {1, 1})).group.is_trivial());
    ResidueUnits r5 = residue_units(qi, principal_ideal(qi, {5, 0}));
    CHECK(r5.group == direct_sum(Z(4), Z(4)));
    CHECK(static_cast<long>(r5.units.size()) == oracle::units_mod_rational(0, 1, 5));
    CHECK(residue_units(q5, ideal_from_generators(q5, {{2, 0}, {1, 1}})).group.is_trivial());
    CHECK(residue_units(qi, principal_ideal(qi, {1, 0})).group.is_trivial());

    for (long d : kDiscriminants) {
        ImagQuadField f(d);
        for (long m : {2L, 3L, 4L, 6L}) {
            Ideal j = principal_ideal(f, {m, 0});
            ResidueUnits r = residue_units(f, j);
            CHECK(static_cast<long>(r.units.size()) == oracle::units_mod_rational(f.t.get_si(), f.n.get_si(), m));
            CHECK(r.group.order() == Integer(static_cast<long>(r.units.size())));
            // Generators really are units with the stated coordinates.
            ResidueRing ring(f, j);
            for (std::size_t k = 0; k < r.generators.size(); ++k) {
                auto c = r.coordinates(ring, r.generators[k]);
                for (std::size_t i = 0; i < c.size(); ++i) CHECK(c[i] == (i == k ? 1 : 0));
            }
        }
    }
    CHECK_THROWS_AS(residue_units(qi, principal_ideal(qi, {1000, 0}), 1000), SizeGuardExceeded);
}

TEST_CASE("ray class groups")
{
    ImagQuadField qi(-4), q5(-20);
    RayClassGroup r5 = ray_class_group(qi, principal_ideal(qi, {5, 0}));
    CHECK(r5.group == Z(4));
    CHECK(r5.unit_image_order == 4);
    CHECK(ray_class_group(qi, principal_ideal(qi, {1, 0})).group.is_trivial());
    CHECK(ray_class_group(q5, principal_ideal(q5, {1, 0})).group == Z(2));

    for (long d : kDiscriminants) {
        ImagQuadField f(d);
        CHECK(ray_class_group(f, principal_ideal(f, {1, 0})).group == class_group(d).group);
        std::vector<Ideal> moduli{principal_ideal(f, {2, 0}), principal_ideal(f, {3, 0}), principal_ideal(f, {1, 1}),
                                  principal_ideal(f, {4, 0}), principal_ideal(f, {5, 0})};
        for (const Ideal& j : moduli) {
            INFO("d = " << d << ", J = " << j.to_string());
            RayClassGroup r = ray_class_group(f, j);
            CHECK(r.group.is_finite());
            CHECK(*r.group.order() * r.unit_image_order == *r.class_group.group.order() * *r.residues.group.order());
            CHECK(r.from_residues.is_well_defined());
            CHECK(r.to_class_group.is_well_defined());
            CHECK(r.to_class_group.is_surjective());
            CHECK(compose(r.to_class_group, r.from_residues).is_zero());
        }
    }
}

TEST_CASE("prime ideal classes")
{
    IdealClassGroup c23 = class_group(-23);
    PrimeClass p59 = prime_ideal_class(c23, 59);
    CHECK(p59.kind == PrimeKind::split);
    CHECK(p59.class_index == 0);
    CHECK(represents({1, 1, 6}, 59, 60));

    PrimeClass p2 = prime_ideal_class(c23, 2);
    CHECK(p2.kind == PrimeKind::split);
    CHECK(c23.forms[p2.class_index] == QuadForm{2, 1, 3});
    CHECK(c23.element_order(p2.class_index) == 3);
    CHECK_FALSE(represents({1, 1, 6}, 2, 10));

    CHECK(prime_ideal_class(class_group(-4), 3).kind == PrimeKind::inert);
    CHECK(prime_ideal_class(c23, 23).kind == PrimeKind::ramified);
    CHECK_THROWS_AS(prime_ideal_class(c23, 15), InvalidInput);

    for (long d : kDiscriminants) {
        IdealClassGroup cl = class_group(d);
        ImagQuadField f(d);
        for (long p : {2L, 3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L, 29L, 31L, 37L, 41L, 43L, 47L}) {
            INFO("d = " << d << ", p = " << p);
            PrimeClass c = prime_ideal_class(cl, p);
            if (c.kind == PrimeKind::inert) continue;
            // The k-th power is principal, k the order of the class.
            const std::size_t k = cl.element_order(c.class_index);
            QuadForm x = principal_form(d);
            for (std::size_t i = 0; i < k; ++i) x = compose_forms(x, *c.form, d);
            CHECK(x == principal_form(d));
            Ideal prime = form_to_ideal(f, *c.form);
            CHECK(prime.norm() == p);
            CHECK(principal_generator(f, ideal_pow(f, prime, k)).has_value());
            // Principal class iff p is represented by the principal form.
            CHECK((c.class_index == 0) == represents(principal_form(d), p, 20));
        }
    }
}

TEST_CASE("class numbers by ideal enumeration")
{
    for (long d = -500; d < 0; ++d) {
        if (!fundamental_by_factoring(d)) continue;
        INFO("d = " << d);
        CHECK(static_cast<long>(class_number_by_ideals(d)) == oracle::analytic_class_number(d));
    }
    ImagQuadField f(-20);
    Ideal p2{2, 1, 1};
    CHECK(conjugate_ideal(f, p2) == p2);
    ImagQuadField g(-23);
    Ideal q{2, 0, 1};
    CHECK(conjugate_ideal(g, q) == Ideal{2, 1, 1});
    CHECK(ideal_mul(g, q, conjugate_ideal(g, q)) == principal_ideal(g, {2, 0}));
}
