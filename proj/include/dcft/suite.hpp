#pragma once

// The acceptance battery: one entry per criterion, each a list of exact
// checks. Criterion 11 (two runs give identical payloads) is checked by
// running the battery twice from outside.

#include <functional>
#include <string>
#include <vector>

#include "dcft/cft.hpp"
#include "dcft/chain.hpp"
#include "dcft/derivedab.hpp"
#include "dcft/grouphomology.hpp"
#include "dcft/homology.hpp"
#include "dcft/numberfield.hpp"
#include "dcft/random_complex.hpp"
#include "dcft/report.hpp"
#include "dcft/simplicial.hpp"

namespace dcft::suite {

struct Criterion {
    int id = 0;
    std::string title;
    std::vector<Check> checks;
    bool pass() const { return !checks.empty() && all_pass(checks); }
};

struct Settings {
    std::size_t size_guard = kDefaultSizeGuard;
    std::vector<long> discriminants{-3, -4, -20, -23, -31, -47, -84};
    std::vector<long> kummer_levels{2, 3, 4, 5, 6, 8, 12};
    std::vector<long> theorem_discriminants{-4, -20, -23, -84};
    std::vector<long> theorem_levels{2, 3, 4, 6, 8, 12};
    long artin_p_max = 10000;
    std::size_t dold_kan_trials = 200;
    std::uint64_t seed = 20240601;
};

inline Check same(std::string name, const std::string& lhs, const std::string& rhs, std::string provenance)
{
    return {std::move(name), lhs, rhs, lhs == rhs, std::move(provenance)};
}

inline Criterion derived_abelianization_catalog(const Settings& s)
{
    Criterion c{1, "pi_0 of the derived abelianization is G^ab and pi_i = H_{i+1} for i <= 2 (catalog, order <= 16)", {}};
    for (const auto& g : group_catalog()) {
        DerivedAbelianization d = derived_abelianization(g, 3, s.size_guard);
        c.checks.push_back(same(g.label() + ": pi_0 = G^ab", pi(d, 0).to_string(), abelianization(g).to_string(),
                                 "derived_abelianization; abelianization"));
        for (std::size_t i = 1; i <= 2; ++i)
            c.checks.push_back(same(g.label() + ": pi_" + std::to_string(i) + " = H_" + std::to_string(i + 1),
                                     pi(d, i).to_string(), group_homology(g, i + 1, s.size_guard).to_string(),
                                     "derived_abelianization; group_homology"));
    }
    return c;
}

inline Criterion homology_regression(const Settings& s)
{
    Criterion c{2, "homology regression table", {}};
    auto add = [&](const FiniteGroup& g, std::size_t i, const std::string& expected) {
        c.checks.push_back(same("H_" + std::to_string(i) + "(" + g.label() + ")",
                                 group_homology(g, i, s.size_guard).to_string(), expected, "group_homology; regression table"));
    };
    for (std::size_t n = 1; n <= 6; ++n) {
        FiniteGroup g = cyclic_group(n);
        for (std::size_t i = 0; i <= 4; ++i) {
            std::string expected = i == 0 ? "Z" : (i % 2 == 1 && n > 1 ? "Z/" + std::to_string(n) : "0");
            add(g, i, expected);
        }
    }
    add(catalog_group("C2xC2"), 2, "Z/2");
    FiniteGroup s3 = catalog_group("S3");
    add(s3, 1, "Z/2");
    add(s3, 2, "0");
    add(s3, 3, "Z/6");
    FiniteGroup q8 = catalog_group("Q8");
    add(q8, 1, "Z/2 + Z/2");
    add(q8, 2, "0");
    return c;
}

inline Criterion dold_kan(const Settings& s)
{
    Criterion c{3, "Dold-Kan round trip on random complexes (top degree <= 4, |entries| <= 10)", {}};
    ComplexRng rng(s.seed);
    std::size_t ok = 0, bounded = 0;
    for (std::size_t t = 0; t < s.dold_kan_trials; ++t) {
        const std::size_t top = 1 + t % 4;
        KnownComplex k = random_known_complex(rng, top, 2, 10);
        bool in_bounds = true;
        for (std::size_t n = 1; n <= top; ++n) in_bounds = in_bounds && entries_bounded(k.complex.differential(n).to_dense(), 10);
        bounded += in_bounds;
        ok += dold_kan_round_trip(k.complex, top).ok();
    }
    const std::string total = std::to_string(s.dold_kan_trials);
    c.checks.push_back(same("complexes with |entries| <= 10", std::to_string(bounded), total, "random_known_complex"));
    c.checks.push_back(same("C -> N Gamma C is an isomorphism", std::to_string(ok), total, "dold_kan_round_trip"));
    return c;
}

inline Criterion dold_thom(const Settings&)
{
    Criterion c{4, "Dold-Thom: H_1(Sym^n S^1) = Z for n = 1..3; wedge of two circles stabilizes at Z^2", {}};
    DoldThomReport circle_report = dold_thom_check(circle(2), 3, 1);
    for (std::size_t n = 1; n <= 3; ++n)
        c.checks.push_back(same("H_1(Sym^" + std::to_string(n) + " S^1)", circle_report.values[n - 1].to_string(), "Z",
                                 "dold_thom_check"));
    DoldThomReport wedge = dold_thom_check(wedge_of_circles(2, 2), 3, 1);
    c.checks.push_back(same("stable H_1(Sym^n (S^1 v S^1))", wedge.stable_value ? wedge.stable_value->to_string() : "not stabilized",
                             "Z^2", "dold_thom_check"));
    c.checks.push_back(same("stable value = reduced H_1", wedge.matches ? "yes" : "no", "yes", "dold_thom_check"));
    return c;
}

inline Criterion class_numbers(const Settings&)
{
    Criterion c{5, "class numbers for fundamental -500 <= d < 0 against ideal enumeration", {}};
    for (long d = -500; d < 0; ++d) {
        if (!is_fundamental_discriminant(d)) continue;
        c.checks.push_back(same("h(" + std::to_string(d) + ")", std::to_string(class_number(d)),
                                 std::to_string(class_number_by_ideals(d)), "reduced_forms; class_number_by_ideals"));
    }
    for (auto [d, h] : std::vector<std::pair<long, long>>{{-4, 1}, {-20, 2}, {-23, 3}, {-47, 5}})
        c.checks.push_back(same("spot h(" + std::to_string(d) + ")", std::to_string(class_number(d)), std::to_string(h),
                                 "reduced_forms; spot table"));
    return c;
}

inline Criterion kummer(const Settings& s)
{
    Criterion c{6, "Kummer exactness |H^1| = |O^x/n| |Cl[n]| and |H^2| = |Cl/n|", {}};
    for (long d : s.discriminants) {
        const FgAbGroup cl = class_group(d).group;
        for (long n : s.kummer_levels) {
            KummerCohomology k = kummer_cohomology(d, n);
            const std::string at = "(d=" + std::to_string(d) + ", n=" + std::to_string(n) + ")";
            c.checks.push_back(same("|H^1| " + at, k.h1.order()->get_str(),
                                     Integer(*k.units_mod_n.order() * *k.class_n_torsion.order()).get_str(),
                                     "kummer_cohomology.h1; unit_group; class_group"));
            c.checks.push_back(same("|H^2| " + at, k.h2.order()->get_str(), quotient_by_multiple(cl, n).order()->get_str(),
                                     "kummer_cohomology.h2; class_group"));
        }
    }
    return c;
}

inline Criterion poitou_tate(const Settings& s)
{
    Criterion c{7, "Poitou-Tate order check on the (d, n) grid", {}};
    for (long d : s.discriminants)
        for (long n : s.kummer_levels) {
            PoitouTateReport r = poitou_tate_order_check(d, n);
            const Check& k = r.checks.front();
            c.checks.push_back({k.name + " (d=" + std::to_string(d) + ", n=" + std::to_string(n) + ")", k.lhs, k.rhs,
                                r.pass(), k.provenance});
        }
    return c;
}

inline Criterion theorem(const Settings& s)
{
    Criterion c{8, "verification report: pi_0 and pi_1 paths agree, predicted block flagged", {}};
    std::vector<Integer> levels(s.theorem_levels.begin(), s.theorem_levels.end());
    for (long d : s.theorem_discriminants) {
        TheoremReport r = verify_main_theorem(d, levels, s.artin_p_max);
        const std::string at = " (d=" + std::to_string(d) + ")";
        for (const auto& v : r.verified) c.checks.push_back({v.name + at, v.lhs, v.rhs, v.pass, v.provenance});
        bool flagged = !r.predicted.empty();
        for (const auto& p : r.predicted) flagged = flagged && !p.verified;
        c.checks.push_back(same("predicted block present and unverified" + at, flagged ? "yes" : "no", "yes",
                                 "verify_main_theorem"));
    }
    return c;
}

inline Criterion artin(const Settings& s)
{
    Criterion c{9, "splitting law for curated Hilbert class fields, p < 10^4", {}};
    for (const auto& e : hcf_catalog()) {
        ArtinReport r = artin_pi0_check(e.d, e.coefficients, s.artin_p_max);
        c.checks.push_back({"agreement d=" + std::to_string(e.d) + " " + e.display, std::to_string(r.agreed),
                            std::to_string(r.checked), r.pass(), "artin_pi0_check"});
    }
    return c;
}

inline Criterion functoriality(const Settings& s)
{
    Criterion c{10, "transfer functoriality on every catalog subgroup pair", {}};
    c.checks = norm_transfer_report(subgroup_pair_catalog(), 2, s.size_guard).checks;
    return c;
}

using CriterionFn = std::function<Criterion(const Settings&)>;

inline std::vector<CriterionFn> criteria()
{
    return {derived_abelianization_catalog, homology_regression, dold_kan, dold_thom, class_numbers,
            kummer, poitou_tate, theorem, artin, functoriality};
}

inline report::Json to_json(const Criterion& c)
{
    return report::Json{{"id", c.id}, {"title", c.title}, {"pass", c.pass()}, {"checks", report::checks(c.checks)}};
}

}  // namespace dcft::suite
