#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dcft/abgroup.hpp"
#include "dcft/chain.hpp"
#include "dcft/error.hpp"
#include "dcft/group.hpp"
#include "dcft/homology.hpp"

namespace dcft {

inline constexpr std::size_t kDefaultSizeGuard = 1000000;

// ---- abelianization -----------------------------------------------------------

struct Abelianization {
    FgAbGroup group;
    // Canonical coordinates of the image of each element of G.
    std::vector<std::vector<Integer>> log;
    // An element of G mapping to each canonical generator.
    std::vector<std::size_t> generator_lifts;
};

inline Abelianization abelianization_data(const FiniteGroup& g)
{
    Quotient q = quotient_group(g, commutator_subgroup(g));
    auto s = finite_abelian_from_table(
        q.group.order(), [&](std::size_t a, std::size_t b) { return q.group.mul(a, b); }, 0);
    Abelianization out;
    out.group = s.group;
    out.log.resize(g.order());
    for (std::size_t a = 0; a < g.order(); ++a) out.log[a] = s.log[q.projection[a]];
    for (auto gen : s.generators)
        for (std::size_t a = 0; a < g.order(); ++a)
            if (q.projection[a] == gen) {
                out.generator_lifts.push_back(a);
                break;
            }
    return out;
}

// G / [G, G], with [G, G] computed by closure of commutators.
inline FgAbGroup abelianization(const FiniteGroup& g) { return abelianization_data(g).group; }

// G^ab -> K^ab induced by a homomorphism.
inline AbHom abelianization_map(const FiniteGroup& g, const FiniteGroup& k, const GroupMap& f)
{
    Abelianization ag = abelianization_data(g), ak = abelianization_data(k);
    AbHom h = AbHom::zero(ag.group, ak.group);
    for (std::size_t j = 0; j < ag.generator_lifts.size(); ++j) {
        const auto& c = ak.log[f[ag.generator_lifts[j]]];
        for (std::size_t i = 0; i < c.size(); ++i) h.matrix(i, j) = c[i];
    }
    return h.normalized();
}

// ---- normalized bar chains ------------------------------------------------------

// Cells of degree n are tuples [g1|...|gn] of non-identity elements, encoded
// in base |G|-1 with g1 most significant (digit = element - 1).
class BarIndex {
  public:
    explicit BarIndex(std::size_t order) : base_(order - 1) {}

    std::size_t base() const { return base_; }

    std::size_t count(std::size_t n) const
    {
        std::size_t c = 1;
        for (std::size_t i = 0; i < n; ++i) c *= base_;
        return c;
    }

    std::size_t encode(const std::vector<std::size_t>& t) const
    {
        std::size_t idx = 0;
        for (auto g : t) idx = idx * base_ + (g - 1);
        return idx;
    }

    void decode(std::size_t idx, std::size_t n, std::vector<std::size_t>& t) const
    {
        t.resize(n);
        for (std::size_t i = n; i-- > 0;) {
            t[i] = idx % base_ + 1;
            idx /= base_;
        }
    }

  private:
    std::size_t base_;
};

inline std::size_t bar_cell_count(std::size_t order, std::size_t maxdeg)
{
    std::size_t total = 0, level = 1;
    for (std::size_t n = 0; n <= maxdeg; ++n) {
        total += level;
        if (n < maxdeg) {
            if (order > 1 && level > (std::size_t(-1) / 2) / (order - 1)) return std::size_t(-1);
            level *= (order - 1);
        }
    }
    return total;
}

inline void check_bar_guard(const FiniteGroup& g, std::size_t maxdeg, std::size_t guard)
{
    const std::size_t cells = bar_cell_count(g.order(), maxdeg);
    if (cells > guard)
        throw SizeGuardExceeded("bar chains of a group of order " + std::to_string(g.order()) + " to degree " +
                                std::to_string(maxdeg) + " need " + std::to_string(cells) + " cells (guard " +
                                std::to_string(guard) + ")");
}

// Normalized bar complex C_*(BG): d[g1|..|gn] = [g2|..|gn]
//   + sum_{i=1}^{n-1} (-1)^i [..|g_i g_{i+1}|..] + (-1)^n [g1|..|g_{n-1}],
// with tuples containing the identity dropped.
inline ChainComplex bar_chains(const FiniteGroup& g, std::size_t maxdeg, std::size_t guard = kDefaultSizeGuard)
{
    check_bar_guard(g, maxdeg, guard);
    const BarIndex ix(g.order());
    std::vector<std::size_t> ranks(maxdeg + 1);
    for (std::size_t n = 0; n <= maxdeg; ++n) ranks[n] = ix.count(n);
    std::vector<SparseIntMatrix> d;
    std::vector<std::size_t> t, face;
    for (std::size_t n = 1; n <= maxdeg; ++n) {
        SparseIntMatrix m(ranks[n - 1], ranks[n]);
        for (std::size_t j = 0; j < ranks[n]; ++j) {
            ix.decode(j, n, t);
            SparseColumn col;
            for (std::size_t i = 0; i <= n; ++i) {
                face.clear();
                bool degenerate = false;
                for (std::size_t k = 0; k < n; ++k) {
                    if (i == 0 && k == 0) continue;
                    if (i == n && k == n - 1) continue;
                    if (i > 0 && i < n && k == i) continue;
                    std::size_t v = t[k];
                    if (i > 0 && i < n && k == i - 1) {
                        v = g.mul(t[i - 1], t[i]);
                        if (v == 0) degenerate = true;
                    }
                    face.push_back(v);
                }
                if (degenerate) continue;
                col.emplace_back(ix.encode(face), (i % 2) ? Integer(-1) : Integer(1));
            }
            m.set_column(j, std::move(col));
        }
        d.push_back(std::move(m));
    }
    return ChainComplex(std::move(ranks), std::move(d));
}

// Degree-n component of the chain map induced by a homomorphism f : G -> K,
// [g1|..|gn] -> [f g1|..|f gn] (zero when some f(gi) is the identity).
inline SparseIntMatrix bar_map(const FiniteGroup& g, const FiniteGroup& k, const GroupMap& f, std::size_t n)
{
    const BarIndex ig(g.order()), ik(k.order());
    SparseIntMatrix m(ik.count(n), ig.count(n));
    std::vector<std::size_t> t, u(n);
    for (std::size_t j = 0; j < ig.count(n); ++j) {
        ig.decode(j, n, t);
        bool degenerate = false;
        for (std::size_t i = 0; i < n && !degenerate; ++i) {
            u[i] = f[t[i]];
            degenerate = (u[i] == 0);
        }
        if (degenerate) continue;
        m.set_column(j, {{ik.encode(u), Integer(1)}});
    }
    return m;
}

// Representatives of the right cosets Hx, indexed like right_cosets(); the
// representative of H itself must be the identity.
using CosetRepresentatives = std::vector<std::size_t>;

inline CosetRepresentatives default_representatives(const FiniteGroup& g, const Subgroup& h)
{
    return right_cosets(g, h).smallest;
}

// Degree-n component of the chain-level transfer C_n(BG) -> C_n(BH).
// In homogeneous coordinates [g1|..|gn] is (1, g1, g1 g2, ...); the transfer
// sums its translates by the representatives s and retracts each entry
// through rho(x) = x t(x)^{-1}, t(x) the representative of Hx.
inline SparseIntMatrix bar_transfer(const FiniteGroup& g, const Subgroup& h, std::size_t n,
                                    const CosetRepresentatives& reps)
{
    const RightCosets rc = right_cosets(g, h);
    if (reps.size() != rc.smallest.size()) throw InvalidInput("transfer: one representative per coset required");
    for (std::size_t c = 0; c < reps.size(); ++c)
        if (reps[c] >= g.order() || rc.coset_of[reps[c]] != c) throw InvalidInput("transfer: representative in wrong coset");
    if (reps[0] != 0) throw InvalidInput("transfer: the identity must represent H");

    std::vector<std::size_t> pos(g.order(), g.order());
    for (std::size_t i = 0; i < h.order(); ++i) pos[h.elements[i]] = i;
    std::vector<std::size_t> rho(g.order());
    for (std::size_t x = 0; x < g.order(); ++x) rho[x] = g.mul(x, g.inverse(reps[rc.coset_of[x]]));

    const BarIndex ig(g.order()), ih(h.order());
    SparseIntMatrix m(ih.count(n), ig.count(n));
    std::vector<std::size_t> t, u(n);
    for (std::size_t j = 0; j < ig.count(n); ++j) {
        ig.decode(j, n, t);
        SparseColumn col;
        for (auto s : reps) {
            std::size_t x = s, prev = rho[s];
            bool degenerate = false;
            for (std::size_t i = 0; i < n && !degenerate; ++i) {
                x = g.mul(x, t[i]);
                const std::size_t r = rho[x];
                const std::size_t step = pos[g.mul(g.inverse(prev), r)];
                degenerate = (step == 0);
                u[i] = step;
                prev = r;
            }
            if (!degenerate) col.emplace_back(ih.encode(u), Integer(1));
        }
        m.set_column(j, std::move(col));
    }
    return m;
}

// ---- homology -------------------------------------------------------------------

// H_i(G; Z). H_0 = Z without bar computation.
inline FgAbGroup group_homology(const FiniteGroup& g, std::size_t i, std::size_t guard = kDefaultSizeGuard)
{
    if (i == 0) return FgAbGroup::free(1);
    return homology(bar_chains(g, i + 1, guard), i);
}

// Bar complex of G through degree i + 1 with a tracked homology model at i.
struct BarHomology {
    ChainComplex bar;
    HomologyModel model;

    BarHomology(const FiniteGroup& g, std::size_t i, std::size_t guard = kDefaultSizeGuard)
        : bar(bar_chains(g, i + 1, guard)), model(bar, i, i, true)
    {
    }
};

// H_i(H) -> H_i(G) induced by the inclusion.
inline AbHom restriction_map(const FiniteGroup& g, const Subgroup& h, std::size_t i, std::size_t guard = kDefaultSizeGuard)
{
    if (i == 0) return AbHom::identity(FgAbGroup::free(1));
    FiniteGroup hg = subgroup_as_group(g, h);
    BarHomology src(hg, i, guard), dst(g, i, guard);
    return induced_map(bar_map(hg, g, h.elements, i), src.model, dst.model, i);
}

// Transfer H_i(G) -> H_i(H).
inline AbHom corestriction_map(const FiniteGroup& g, const Subgroup& h, std::size_t i,
                               std::optional<CosetRepresentatives> reps = std::nullopt,
                               std::size_t guard = kDefaultSizeGuard)
{
    if (i == 0) return AbHom::identity(FgAbGroup::free(1)).scaled(Integer(static_cast<long>(index_of(g, h))));
    const CosetRepresentatives r = reps ? *reps : default_representatives(g, h);
    FiniteGroup hg = subgroup_as_group(g, h);
    BarHomology src(g, i, guard), dst(hg, i, guard);
    return induced_map(bar_transfer(g, h, i, r), src.model, dst.model, i);
}

namespace detail {

// Sends a class represented by a combination of 1-cells [g] to the image of
// the product of the g in G^ab.
inline AbHom one_cells_to_abelianization(const FiniteGroup& g, const FgAbGroup& source,
                                         const std::vector<std::vector<Integer>>& gens)
{
    Abelianization ab = abelianization_data(g);
    AbHom out = AbHom::zero(source, ab.group);
    for (std::size_t j = 0; j < gens.size(); ++j) {
        std::vector<Integer> c(ab.group.generator_count());
        for (std::size_t cell = 0; cell < gens[j].size(); ++cell) {
            if (gens[j][cell] == 0) continue;
            const auto& l = ab.log[cell + 1];
            for (std::size_t i = 0; i < c.size(); ++i) c[i] += gens[j][cell] * l[i];
        }
        for (std::size_t i = 0; i < c.size(); ++i) out.matrix(i, j) = c[i];
    }
    return out.normalized();
}

}  // namespace detail

// The identification H_1(G) -> G^ab sending the class of [g] to the image of g.
inline AbHom h1_to_abelianization(const FiniteGroup& g, const HomologyModel& model)
{
    return detail::one_cells_to_abelianization(g, model.group(1), model.generators(1));
}

// Classical transfer G^ab -> H^ab (Schreier): with left coset
// representatives t_i, g t_i = t_j h_i and Ver(g) = prod h_i mod [H, H].
inline AbHom verlagerung(const FiniteGroup& g, const Subgroup& h)
{
    FiniteGroup hg = subgroup_as_group(g, h);
    Abelianization ag = abelianization_data(g), ah = abelianization_data(hg);
    const RightCosets lc = left_cosets(g, h);
    std::vector<std::size_t> pos(g.order(), g.order());
    for (std::size_t i = 0; i < h.order(); ++i) pos[h.elements[i]] = i;

    AbHom out = AbHom::zero(ag.group, ah.group);
    for (std::size_t j = 0; j < ag.generator_lifts.size(); ++j) {
        const std::size_t x = ag.generator_lifts[j];
        std::vector<Integer> c(ah.group.generator_count());
        for (auto t : lc.smallest) {
            const std::size_t xt = g.mul(x, t);
            const std::size_t tj = lc.smallest[lc.coset_of[xt]];
            const std::size_t hi = g.mul(g.inverse(tj), xt);
            const auto& l = ah.log[pos[hi]];
            for (std::size_t i = 0; i < c.size(); ++i) c[i] += l[i];
        }
        for (std::size_t i = 0; i < c.size(); ++i) out.matrix(i, j) = c[i];
    }
    return out.normalized();
}

}  // namespace dcft
