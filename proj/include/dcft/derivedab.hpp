#pragma once

// Derived abelianization of a finite group as a connective chain complex:
// reduced normalized bar chains shifted down by one, so pi_i = H_{i+1}(G).
// Profinite version over towers of finite quotients.

#include <optional>
#include <string>
#include <vector>

#include "dcft/abgroup.hpp"
#include "dcft/chain.hpp"
#include "dcft/error.hpp"
#include "dcft/group.hpp"
#include "dcft/grouphomology.hpp"
#include "dcft/homology.hpp"

namespace dcft {

struct DerivedAbelianization {
    std::string source;
    FiniteGroup group;
    ChainComplex chain;
    std::size_t truncation = 0;  // chain lives in degrees 0..truncation
};

// Bar chains with the degree-0 copy of Z removed.
inline ChainComplex reduced_bar_chains(const FiniteGroup& g, std::size_t maxdeg, std::size_t guard = kDefaultSizeGuard)
{
    ChainComplex bar = bar_chains(g, maxdeg, guard);
    std::vector<std::size_t> ranks = bar.ranks();
    ranks[0] = 0;
    std::vector<SparseIntMatrix> d;
    for (std::size_t n = 1; n <= maxdeg; ++n) d.push_back(n == 1 ? SparseIntMatrix(0, ranks[1]) : bar.differential(n));
    return ChainComplex(std::move(ranks), std::move(d));
}

inline DerivedAbelianization derived_abelianization(const FiniteGroup& g, std::size_t maxdeg,
                                                    std::size_t guard = kDefaultSizeGuard)
{
    DerivedAbelianization d;
    d.source = g.label();
    d.group = g;
    d.chain = shift(reduced_bar_chains(g, maxdeg + 1, guard), -1);
    d.truncation = maxdeg;
    return d;
}

inline FgAbGroup pi(const DerivedAbelianization& d, std::size_t i)
{
    if (i >= d.truncation)
        throw DegreeOutOfRange("pi_" + std::to_string(i) + " needs truncation degree > " + std::to_string(i));
    return homology(d.chain, i);
}

// Derived abelianization through degree i + 1 with a tracked model at i.
struct DerivedModel {
    DerivedAbelianization derived;
    HomologyModel model;

    DerivedModel(const FiniteGroup& g, std::size_t i, std::size_t guard = kDefaultSizeGuard)
        : derived(derived_abelianization(g, i + 1, guard)), model(derived.chain, i, i, true)
    {
    }
};

// pi_0 -> G^ab, the class of [g] going to the image of g.
inline AbHom pi0_to_abelianization(const FiniteGroup& g, const HomologyModel& model)
{
    return detail::one_cells_to_abelianization(g, model.group(0), model.generators(0));
}

// pi_i(G) -> pi_i(K) induced by a homomorphism f : G -> K.
inline AbHom derived_map(const FiniteGroup& g, const FiniteGroup& k, const GroupMap& f, std::size_t i,
                         std::size_t guard = kDefaultSizeGuard)
{
    if (!is_homomorphism(g, k, f)) throw InvalidInput("derived_map: not a homomorphism");
    DerivedModel src(g, i, guard), dst(k, i, guard);
    return induced_map(bar_map(g, k, f, i + 1), src.model, dst.model, i);
}

// pi_i(G) -> pi_i(H) induced by the chain-level transfer in bar degree i + 1.
inline AbHom transfer_derived(const FiniteGroup& g, const Subgroup& h, std::size_t i,
                              std::optional<CosetRepresentatives> reps = std::nullopt,
                              std::size_t guard = kDefaultSizeGuard)
{
    const CosetRepresentatives r = reps ? *reps : default_representatives(g, h);
    FiniteGroup hg = subgroup_as_group(g, h);
    DerivedModel src(g, i, guard), dst(hg, i, guard);
    return induced_map(bar_transfer(g, h, i + 1, r), src.model, dst.model, i);
}

// ---- towers of finite quotients ---------------------------------------------------

// levels[0] <- levels[1] <- ... ; maps[k] : levels[k+1] -> levels[k].
struct FiniteQuotientTower {
    std::vector<FiniteGroup> levels;
    std::vector<GroupMap> maps;
};

inline std::optional<std::string> find_tower_violation(const FiniteQuotientTower& t)
{
    if (t.levels.empty()) return "tower has no levels";
    if (t.maps.size() + 1 != t.levels.size()) return "tower needs one map per consecutive pair of levels";
    for (std::size_t k = 0; k < t.maps.size(); ++k) {
        const auto& f = t.maps[k];
        if (f.size() != t.levels[k + 1].order()) return "map " + std::to_string(k) + " has the wrong domain size";
        for (auto v : f)
            if (v >= t.levels[k].order()) return "map " + std::to_string(k) + " leaves its target";
        if (!is_homomorphism(t.levels[k + 1], t.levels[k], f)) return "map " + std::to_string(k) + " is not a homomorphism";
        if (!is_surjective(t.levels[k], f)) return "map " + std::to_string(k) + " is not surjective";
    }
    return std::nullopt;
}

inline void validate_tower(const FiniteQuotientTower& t)
{
    if (auto v = find_tower_violation(t)) throw InvalidInput("invalid tower: " + *v);
}

inline FiniteQuotientTower constant_tower(const FiniteGroup& g, std::size_t length)
{
    if (length == 0) throw InvalidInput("tower needs at least one level");
    GroupMap id(g.order());
    for (std::size_t x = 0; x < id.size(); ++x) id[x] = x;
    return {std::vector<FiniteGroup>(length, g), std::vector<GroupMap>(length - 1, id)};
}

// G/G^(1) <- G/G^(2) <- ... along the derived series, up to the point where
// it stops shrinking (the last level is G itself for solvable G).
inline FiniteQuotientTower derived_series_tower(const FiniteGroup& g)
{
    std::vector<Subgroup> series{whole_group(g)};
    for (;;) {
        const Subgroup& s = series.back();
        FiniteGroup sg = subgroup_as_group(g, s);
        std::vector<std::size_t> elems;
        for (auto e : commutator_subgroup(sg).elements) elems.push_back(s.elements[e]);
        Subgroup next = make_subgroup(g, std::move(elems));
        if (next.order() == s.order()) break;
        series.push_back(std::move(next));
    }
    FiniteQuotientTower t;
    std::vector<GroupMap> proj;
    for (std::size_t k = 1; k < series.size(); ++k) {
        Quotient q = quotient_group(g, series[k], g.label() + "/G^(" + std::to_string(k) + ")");
        if (k + 1 == series.size() && series[k].order() == 1) q.group.set_label(g.label());
        t.levels.push_back(std::move(q.group));
        proj.push_back(std::move(q.projection));
    }
    if (t.levels.empty()) {
        // Perfect group: the only solvable quotient is trivial.
        t.levels.push_back(FiniteGroup());
        return t;
    }
    for (std::size_t k = 0; k + 1 < t.levels.size(); ++k) {
        GroupMap f(t.levels[k + 1].order(), t.levels[k].order());
        for (std::size_t x = 0; x < g.order(); ++x) f[proj[k + 1][x]] = proj[k][x];
        t.maps.push_back(std::move(f));
    }
    return t;
}

struct ProfiniteDerivedPi {
    std::size_t degree = 0;
    std::vector<FgAbGroup> values;  // pi_i of each level
    std::vector<AbHom> transitions;  // transitions[k] : values[k+1] -> values[k]
    bool stabilized = false;
    std::optional<ProfiniteFgAb> limit;  // only when stabilized
};

// Stabilized when the top transition is an isomorphism; the limit is then
// the value at the top level.
inline ProfiniteDerivedPi profinite_derived_pi(const FiniteQuotientTower& t, std::size_t i,
                                               std::size_t guard = kDefaultSizeGuard)
{
    validate_tower(t);
    ProfiniteDerivedPi out;
    out.degree = i;
    std::vector<DerivedModel> models;
    models.reserve(t.levels.size());
    for (const auto& g : t.levels) {
        models.emplace_back(g, i, guard);
        out.values.push_back(models.back().model.group(i));
    }
    for (std::size_t k = 0; k < t.maps.size(); ++k)
        out.transitions.push_back(
            induced_map(bar_map(t.levels[k + 1], t.levels[k], t.maps[k], i + 1), models[k + 1].model, models[k].model, i));
    out.stabilized = !out.transitions.empty() && out.transitions.back().is_isomorphism();
    if (out.stabilized) out.limit = profinite_complete(out.values.back());
    return out;
}

}  // namespace dcft
