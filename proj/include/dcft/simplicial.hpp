#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dcft/abgroup.hpp"
#include "dcft/chain.hpp"
#include "dcft/error.hpp"
#include "dcft/group.hpp"
#include "dcft/homology.hpp"
#include "dcft/smith.hpp"

namespace dcft {

// ---- the simplex category ---------------------------------------------------

// Order-preserving map [m] -> [n] stored by its values.
using SimplexMap = std::vector<std::uint8_t>;

namespace simplex {

// delta^i : [n-1] -> [n], skips i.
inline SimplexMap coface(std::size_t n, std::size_t i)
{
    SimplexMap m(n);
    for (std::size_t t = 0; t < n; ++t) m[t] = static_cast<std::uint8_t>(t < i ? t : t + 1);
    return m;
}

// sigma^j : [n+1] -> [n], hits j twice.
inline SimplexMap codegeneracy(std::size_t n, std::size_t j)
{
    SimplexMap m(n + 2);
    for (std::size_t t = 0; t <= n + 1; ++t) m[t] = static_cast<std::uint8_t>(t <= j ? t : t - 1);
    return m;
}

// (a ∘ b)(t) = a(b(t))
inline SimplexMap compose(const SimplexMap& a, const SimplexMap& b)
{
    SimplexMap r(b.size());
    for (std::size_t t = 0; t < b.size(); ++t) r[t] = a[b[t]];
    return r;
}

// Order-preserving surjections [n] ->> [k], lexicographic.
inline std::vector<SimplexMap> surjections(std::size_t n, std::size_t k)
{
    std::vector<SimplexMap> out;
    if (k > n) return out;
    SimplexMap cur(n + 1, 0);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t t, std::size_t v) {
        if (t == n + 1) {
            if (v == k) out.push_back(cur);
            return;
        }
        // Value at t is v (stay) or v + 1 (step), t >= 1.
        for (std::size_t step = 0; step <= 1; ++step) {
            const std::size_t w = v + step;
            if (w > k) continue;
            if (k - w > n - t) continue;
            cur[t] = static_cast<std::uint8_t>(w);
            rec(t + 1, w);
        }
    };
    if (n == 0) return k == 0 ? std::vector<SimplexMap>{SimplexMap{0}} : out;
    cur[0] = 0;
    rec(1, 0);
    return out;
}

// Epi-mono factorization f = mono ∘ epi. `image` lists the values hit.
struct EpiMono {
    SimplexMap epi;
    std::vector<std::uint8_t> image;
};

inline EpiMono factor(const SimplexMap& f)
{
    EpiMono e;
    for (auto v : f)
        if (e.image.empty() || e.image.back() != v) e.image.push_back(v);
    e.epi.resize(f.size());
    std::size_t r = 0;
    for (std::size_t t = 0; t < f.size(); ++t) {
        if (t > 0 && f[t] != f[t - 1]) ++r;
        e.epi[t] = static_cast<std::uint8_t>(r);
    }
    return e;
}

}  // namespace simplex

// ---- simplicial identities ------------------------------------------------------

namespace detail {

// Checks every simplicial identity up to level n_max. face(n, i) maps level
// n to n-1, degen(n, j) maps level n to n+1, comp(a, b) applies b first.
template <class Face, class Degen, class Comp, class Eq, class Id>
std::optional<std::string> first_identity_violation(std::size_t n_max, Face face, Degen degen, Comp comp, Eq eq, Id id)
{
    auto s = [](std::size_t v) { return std::to_string(v); };
    for (std::size_t n = 2; n <= n_max; ++n)
        for (std::size_t j = 1; j <= n; ++j)
            for (std::size_t i = 0; i < j; ++i)
                if (!eq(comp(face(n - 1, i), face(n, j)), comp(face(n - 1, j - 1), face(n, i))))
                    return "d_" + s(i) + " d_" + s(j) + " = d_" + s(j - 1) + " d_" + s(i) + " fails at level " + s(n);
    for (std::size_t n = 0; n + 2 <= n_max; ++n)
        for (std::size_t j = 0; j <= n; ++j)
            for (std::size_t i = 0; i <= j; ++i)
                if (!eq(comp(degen(n + 1, i), degen(n, j)), comp(degen(n + 1, j + 1), degen(n, i))))
                    return "s_" + s(i) + " s_" + s(j) + " = s_" + s(j + 1) + " s_" + s(i) + " fails at level " + s(n);
    for (std::size_t n = 0; n + 1 <= n_max; ++n)
        for (std::size_t j = 0; j <= n; ++j)
            for (std::size_t i = 0; i <= n + 1; ++i) {
                auto lhs = comp(face(n + 1, i), degen(n, j));
                bool ok;
                std::string rhs;
                if (i < j) {
                    ok = eq(lhs, comp(degen(n - 1, j - 1), face(n, i)));
                    rhs = "s_" + s(j - 1) + " d_" + s(i);
                } else if (i == j || i == j + 1) {
                    ok = eq(lhs, id(n));
                    rhs = "id";
                } else {
                    ok = eq(lhs, comp(degen(n - 1, j), face(n, i - 1)));
                    rhs = "s_" + s(j) + " d_" + s(i - 1);
                }
                if (!ok) return "d_" + s(i) + " s_" + s(j) + " = " + rhs + " fails at level " + s(n);
            }
    return std::nullopt;
}

}  // namespace detail

// ---- simplicial abelian groups -------------------------------------------------

// Levelwise free simplicial abelian group truncated at level N; level n is
// Z^rank(n). Faces and degeneracies are integer matrices.
class SimplicialAbGroup {
  public:
    SimplicialAbGroup() = default;

    // faces[n][i] : level n -> n-1 for 1 <= n <= N (faces[0] empty);
    // degens[n][j] : level n -> n+1 for n < N.
    SimplicialAbGroup(std::vector<std::size_t> ranks, std::vector<std::vector<SparseIntMatrix>> faces,
                      std::vector<std::vector<SparseIntMatrix>> degens)
        : ranks_(std::move(ranks)), faces_(std::move(faces)), degens_(std::move(degens))
    {
        if (ranks_.empty()) throw InvalidInput("simplicial group needs level 0");
        const std::size_t top = ranks_.size() - 1;
        if (faces_.size() != top + 1 || degens_.size() != top + 1) throw InvalidInput("simplicial group: wrong number of levels");
        for (std::size_t n = 0; n <= top; ++n) {
            if (faces_[n].size() != (n == 0 ? 0 : n + 1)) throw InvalidInput("simplicial group: wrong face count");
            if (degens_[n].size() != (n == top ? 0 : n + 1)) throw InvalidInput("simplicial group: wrong degeneracy count");
            for (const auto& f : faces_[n])
                if (f.rows() != ranks_[n - 1] || f.cols() != ranks_[n]) throw InvalidInput("simplicial group: face shape");
            for (const auto& s : degens_[n])
                if (s.rows() != ranks_[n + 1] || s.cols() != ranks_[n]) throw InvalidInput("simplicial group: degeneracy shape");
        }
    }

    std::size_t truncation() const { return ranks_.size() - 1; }
    std::size_t rank(std::size_t n) const { return ranks_.at(n); }
    FgAbGroup level(std::size_t n) const { return FgAbGroup::free(rank(n)); }
    const SparseIntMatrix& face(std::size_t n, std::size_t i) const { return faces_.at(n).at(i); }
    const SparseIntMatrix& degeneracy(std::size_t n, std::size_t j) const { return degens_.at(n).at(j); }
    AbHom face_hom(std::size_t n, std::size_t i) const { return {level(n), level(n - 1), face(n, i).to_dense()}; }
    AbHom degeneracy_hom(std::size_t n, std::size_t j) const { return {level(n), level(n + 1), degeneracy(n, j).to_dense()}; }

    void set_face(std::size_t n, std::size_t i, SparseIntMatrix m) { faces_.at(n).at(i) = std::move(m); }

  private:
    std::vector<std::size_t> ranks_;
    std::vector<std::vector<SparseIntMatrix>> faces_, degens_;
};

inline std::optional<std::string> find_simplicial_violation(const SimplicialAbGroup& s)
{
    return detail::first_identity_violation(
        s.truncation(), [&](std::size_t n, std::size_t i) { return s.face(n, i); },
        [&](std::size_t n, std::size_t j) { return s.degeneracy(n, j); },
        [](const SparseIntMatrix& a, const SparseIntMatrix& b) { return a * b; },
        [](const SparseIntMatrix& a, const SparseIntMatrix& b) { return a == b; },
        [&](std::size_t n) { return SparseIntMatrix::from_dense(IntMatrix::identity(s.rank(n))); });
}

inline void validate_simplicial(const SimplicialAbGroup& s)
{
    if (auto v = find_simplicial_violation(s)) throw ValidationError("simplicial identity violated: " + *v);
}

// Normalized (Moore) complex N_n = ∩_{i>=1} ker d_i with differential d_0,
// together with the chosen bases: basis[n] is A_n x N_n, coords[n] is a left
// inverse on N_n.
struct NormalizedChains {
    ChainComplex complex;
    std::vector<IntMatrix> basis;
    std::vector<IntMatrix> coords;
};

inline NormalizedChains normalized_chains_with_basis(const SimplicialAbGroup& s)
{
    const std::size_t top = s.truncation();
    NormalizedChains out;
    std::vector<std::size_t> ranks;
    for (std::size_t n = 0; n <= top; ++n) {
        if (n == 0) {
            out.basis.push_back(IntMatrix::identity(s.rank(0)));
            out.coords.push_back(IntMatrix::identity(s.rank(0)));
        } else {
            IntMatrix stacked(0, s.rank(n));
            for (std::size_t i = 1; i <= n; ++i) stacked = stacked.vconcat(s.face(n, i).to_dense());
            IntMatrix c;
            IntMatrix b = kernel_basis(stacked, &c);
            out.basis.push_back(std::move(b));
            out.coords.push_back(std::move(c));
        }
        ranks.push_back(out.basis.back().cols());
    }
    std::vector<SparseIntMatrix> d;
    for (std::size_t n = 1; n <= top; ++n)
        d.push_back(SparseIntMatrix::from_dense(out.coords[n - 1] * (s.face(n, 0).to_dense() * out.basis[n])));
    out.complex = ChainComplex(std::move(ranks), std::move(d));
    return out;
}

inline ChainComplex normalized_chains(const SimplicialAbGroup& s) { return normalized_chains_with_basis(s).complex; }

// Second model: A_n modulo the degenerate subgroup, with the alternating
// face sum. Used to cross-check the normalized complex.
inline ChainComplex degenerate_quotient_chains(const SimplicialAbGroup& s)
{
    const std::size_t top = s.truncation();
    std::vector<Presentation> q;
    std::vector<std::size_t> ranks;
    for (std::size_t n = 0; n <= top; ++n) {
        IntMatrix gens(s.rank(n), 0);
        for (std::size_t j = 0; n > 0 && j < n; ++j) gens = gens.hconcat(s.degeneracy(n - 1, j).to_dense());
        q.push_back(present_cokernel(gens));
        if (!q.back().group.torsion.empty()) throw ValidationError("degenerate quotient is not free");
        ranks.push_back(q.back().group.free_rank);
    }
    std::vector<SparseIntMatrix> d;
    for (std::size_t n = 1; n <= top; ++n) {
        IntMatrix alt(s.rank(n - 1), s.rank(n));
        for (std::size_t i = 0; i <= n; ++i) {
            IntMatrix f = s.face(n, i).to_dense();
            for (std::size_t r = 0; r < f.rows(); ++r)
                for (std::size_t c = 0; c < f.cols(); ++c) alt(r, c) += (i % 2 ? -1 : 1) * f(r, c);
        }
        d.push_back(SparseIntMatrix::from_dense(q[n - 1].to_canonical * alt * q[n].from_canonical));
    }
    return ChainComplex(std::move(ranks), std::move(d));
}

// Dold-Kan inverse: Gamma(C)_n = ⊕_{σ:[n]->>[k]} C_k. For θ : [m] -> [n] the
// summand σ goes along σθ = δη (epi-mono): to summand η by the identity if
// δ = id, by d_k if δ is the coface skipping 0, and to zero otherwise.
class DoldKanGamma {
  public:
    DoldKanGamma(const ChainComplex& c, std::size_t n_max) : c_(c), n_max_(n_max)
    {
        blocks_.resize(n_max + 1);
        offsets_.resize(n_max + 1);
        sizes_.assign(n_max + 1, 0);
        for (std::size_t n = 0; n <= n_max; ++n) {
            for (std::size_t k = 0; k <= std::min(n, c.top_degree()); ++k) {
                if (c.rank(k) == 0) continue;
                for (auto& sigma : simplex::surjections(n, k)) {
                    offsets_[n][{k, sigma}] = sizes_[n];
                    blocks_[n].push_back({k, sigma});
                    sizes_[n] += c.rank(k);
                }
            }
        }
    }

    std::size_t rank(std::size_t n) const { return sizes_[n]; }

    // Offset of the summand of σ : [n] ->> [k] in level n.
    std::size_t offset(std::size_t n, std::size_t k, const SimplexMap& sigma) const { return offsets_[n].at({k, sigma}); }

    // θ* : level n -> level m for θ : [m] -> [n].
    SparseIntMatrix induced(const SimplexMap& theta, std::size_t n) const
    {
        const std::size_t m = theta.size() - 1;
        SparseIntMatrix out(sizes_[m], sizes_[n]);
        for (const auto& [k, sigma] : blocks_[n]) {
            const std::size_t src = offsets_[n].at({k, sigma});
            const auto em = simplex::factor(simplex::compose(sigma, theta));
            const std::size_t j = em.image.size() - 1;
            if (j == k) {
                const std::size_t dst = offsets_[m].at({k, em.epi});
                for (std::size_t c = 0; c < c_.rank(k); ++c) out.set_column(src + c, {{dst + c, Integer(1)}});
            } else if (j + 1 == k && em.image.front() == 1) {
                auto it = offsets_[m].find({k - 1, em.epi});
                if (it == offsets_[m].end()) continue;
                const auto& dk = c_.differential(k);
                for (std::size_t c = 0; c < c_.rank(k); ++c) {
                    SparseColumn col;
                    for (const auto& [r, v] : dk.column(c)) col.emplace_back(it->second + r, v);
                    out.set_column(src + c, std::move(col));
                }
            }
        }
        return out;
    }

    SimplicialAbGroup build() const
    {
        std::vector<std::vector<SparseIntMatrix>> faces(n_max_ + 1), degens(n_max_ + 1);
        for (std::size_t n = 1; n <= n_max_; ++n)
            for (std::size_t i = 0; i <= n; ++i) faces[n].push_back(induced(simplex::coface(n, i), n));
        for (std::size_t n = 0; n < n_max_; ++n)
            for (std::size_t j = 0; j <= n; ++j) degens[n].push_back(induced(simplex::codegeneracy(n, j), n));
        return SimplicialAbGroup(sizes_, std::move(faces), std::move(degens));
    }

  private:
    const ChainComplex& c_;
    std::size_t n_max_;
    std::vector<std::vector<std::pair<std::size_t, SimplexMap>>> blocks_;
    std::vector<std::map<std::pair<std::size_t, SimplexMap>, std::size_t>> offsets_;
    std::vector<std::size_t> sizes_;
};

inline SimplicialAbGroup from_chains(const ChainComplex& c, std::size_t n_max)
{
    validate(c);
    if (c.top_degree() > n_max) throw InvalidInput("from_chains: complex extends beyond the truncation level");
    return DoldKanGamma(c, n_max).build();
}

// The chain map C -> N(Gamma C) including C_n as the summand of id_[n],
// written in the normalized basis of `nc`.
inline ChainMap dold_kan_unit(const ChainComplex& c, std::size_t n_max, const NormalizedChains& nc)
{
    DoldKanGamma gamma(c, n_max);
    ChainMap f;
    for (std::size_t n = 0; n <= n_max; ++n) {
        IntMatrix inc(gamma.rank(n), c.rank(n));
        if (c.rank(n) > 0) {
            SimplexMap id(n + 1);
            for (std::size_t t = 0; t <= n; ++t) id[t] = static_cast<std::uint8_t>(t);
            const std::size_t off = gamma.offset(n, n, id);
            for (std::size_t i = 0; i < c.rank(n); ++i) inc(off + i, i) = 1;
        }
        f.components.push_back(SparseIntMatrix::from_dense(nc.coords[n] * inc));
    }
    return f;
}

struct DoldKanRoundTrip {
    bool simplicial_identities = false;
    bool ranks_match = false;
    bool chain_map = false;
    bool unimodular = false;
    bool ok() const { return simplicial_identities && ranks_match && chain_map && unimodular; }
};

// Is C -> N(Gamma C) an isomorphism of complexes?
inline DoldKanRoundTrip dold_kan_round_trip(const ChainComplex& c, std::size_t n_max)
{
    DoldKanRoundTrip r;
    SimplicialAbGroup s = from_chains(c, n_max);
    r.simplicial_identities = !find_simplicial_violation(s).has_value();
    NormalizedChains nc = normalized_chains_with_basis(s);
    std::vector<std::size_t> ranks = c.ranks();
    ranks.resize(n_max + 1, 0);
    r.ranks_match = nc.complex.ranks() == ranks;
    if (!r.ranks_match) return r;
    ChainComplex padded = c;
    if (c.top_degree() < n_max) {
        std::vector<SparseIntMatrix> d;
        for (std::size_t n = 1; n <= n_max; ++n) d.push_back(n <= c.top_degree() ? c.differential(n) : SparseIntMatrix(ranks[n - 1], 0));
        padded = ChainComplex(ranks, d);
    }
    ChainMap f = dold_kan_unit(c, n_max, nc);
    r.chain_map = is_chain_map(f, padded, nc.complex);
    r.unimodular = true;
    for (std::size_t n = 0; n <= n_max; ++n) {
        IntMatrix m = f.components[n].to_dense();
        if (m.rows() != m.cols()) r.unimodular = false;
        else if (m.rows() > 0 && abs(determinant(m)) != 1) r.unimodular = false;
    }
    return r;
}

// Constant simplicial group on a free group; a finite group A is replaced by
// Gamma of its two-term free resolution (same homotopy groups).
inline SimplicialAbGroup constant_simplicial(const FgAbGroup& a, std::size_t n_max)
{
    const std::size_t r = a.generator_count();
    ChainComplex c =
        a.torsion.empty() ? ChainComplex({r}, {})
                          : ChainComplex::from_dense({r, a.torsion.size()}, {a.relation_matrix()});
    if (n_max == 0 && !a.torsion.empty()) throw InvalidInput("constant simplicial group on a finite group needs N >= 1");
    return from_chains(c, n_max);
}

inline FgAbGroup homotopy_group(const SimplicialAbGroup& s, std::size_t i)
{
    if (i >= s.truncation())
        throw DegreeOutOfRange("pi_" + std::to_string(i) + " needs truncation level > " + std::to_string(i));
    return homology(normalized_chains(s), i);
}

// ---- finite simplicial sets -----------------------------------------------------

class FiniteSimplicialSet {
  public:
    using IndexMap = std::vector<std::uint32_t>;

    FiniteSimplicialSet() = default;

    FiniteSimplicialSet(std::vector<std::size_t> sizes, std::vector<std::vector<IndexMap>> faces,
                        std::vector<std::vector<IndexMap>> degens, std::vector<std::size_t> basepoint)
        : sizes_(std::move(sizes)), faces_(std::move(faces)), degens_(std::move(degens)), base_(std::move(basepoint))
    {
        if (sizes_.empty()) throw InvalidInput("simplicial set needs level 0");
        const std::size_t top = sizes_.size() - 1;
        if (faces_.size() != top + 1 || degens_.size() != top + 1 || base_.size() != top + 1)
            throw InvalidInput("simplicial set: wrong number of levels");
        for (std::size_t n = 0; n <= top; ++n) {
            if (faces_[n].size() != (n == 0 ? 0 : n + 1)) throw InvalidInput("simplicial set: wrong face count");
            if (degens_[n].size() != (n == top ? 0 : n + 1)) throw InvalidInput("simplicial set: wrong degeneracy count");
            if (base_[n] >= sizes_[n]) throw InvalidInput("simplicial set: basepoint out of range");
            for (const auto& f : faces_[n]) {
                if (f.size() != sizes_[n]) throw InvalidInput("simplicial set: face map size");
                for (auto v : f)
                    if (v >= sizes_[n - 1]) throw InvalidInput("simplicial set: face value out of range");
            }
            for (const auto& s : degens_[n]) {
                if (s.size() != sizes_[n]) throw InvalidInput("simplicial set: degeneracy map size");
                for (auto v : s)
                    if (v >= sizes_[n + 1]) throw InvalidInput("simplicial set: degeneracy value out of range");
            }
        }
        degenerate_.resize(top + 1);
        for (std::size_t n = 0; n <= top; ++n) degenerate_[n].assign(sizes_[n], 0);
        for (std::size_t n = 0; n < top; ++n)
            for (const auto& s : degens_[n])
                for (auto v : s) degenerate_[n + 1][v] = 1;
    }

    std::size_t truncation() const { return sizes_.size() - 1; }
    std::size_t size(std::size_t n) const { return sizes_.at(n); }
    const IndexMap& face(std::size_t n, std::size_t i) const { return faces_.at(n).at(i); }
    const IndexMap& degeneracy(std::size_t n, std::size_t j) const { return degens_.at(n).at(j); }
    std::size_t basepoint(std::size_t n) const { return base_.at(n); }
    bool is_degenerate(std::size_t n, std::size_t x) const { return degenerate_.at(n).at(x) != 0; }

    std::size_t nondegenerate_count(std::size_t n) const
    {
        return static_cast<std::size_t>(std::count(degenerate_[n].begin(), degenerate_[n].end(), 0));
    }

    // Simplices of level n lying in the image of s_j.
    std::vector<char> image_of_degeneracy(std::size_t n, std::size_t j) const
    {
        std::vector<char> in(sizes_.at(n), 0);
        for (auto v : degens_.at(n - 1).at(j)) in[v] = 1;
        return in;
    }

    void set_face(std::size_t n, std::size_t i, IndexMap m) { faces_.at(n).at(i) = std::move(m); }

  private:
    std::vector<std::size_t> sizes_;
    std::vector<std::vector<IndexMap>> faces_, degens_;
    std::vector<std::size_t> base_;
    std::vector<std::vector<char>> degenerate_;
};

inline std::optional<std::string> find_simplicial_violation(const FiniteSimplicialSet& x)
{
    using M = FiniteSimplicialSet::IndexMap;
    auto v = detail::first_identity_violation(
        x.truncation(), [&](std::size_t n, std::size_t i) { return x.face(n, i); },
        [&](std::size_t n, std::size_t j) { return x.degeneracy(n, j); },
        [](const M& a, const M& b) {
            M r(b.size());
            for (std::size_t t = 0; t < b.size(); ++t) r[t] = a[b[t]];
            return r;
        },
        [](const M& a, const M& b) { return a == b; },
        [&](std::size_t n) {
            M id(x.size(n));
            for (std::size_t t = 0; t < id.size(); ++t) id[t] = static_cast<std::uint32_t>(t);
            return id;
        });
    if (v) return v;
    for (std::size_t n = 1; n <= x.truncation(); ++n)
        for (std::size_t i = 0; i <= n; ++i)
            if (x.face(n, i)[x.basepoint(n)] != x.basepoint(n - 1))
                return "basepoint not closed under d_" + std::to_string(i) + " at level " + std::to_string(n);
    for (std::size_t n = 0; n < x.truncation(); ++n)
        for (std::size_t j = 0; j <= n; ++j)
            if (x.degeneracy(n, j)[x.basepoint(n)] != x.basepoint(n + 1))
                return "basepoint not closed under s_" + std::to_string(j) + " at level " + std::to_string(n);
    return std::nullopt;
}

inline void validate_simplicial(const FiniteSimplicialSet& x)
{
    if (auto v = find_simplicial_violation(x)) throw ValidationError("simplicial identity violated: " + *v);
}

// A nondegenerate simplex of dimension k with its k+1 faces in
// Eilenberg-Zilber normal form (nondegenerate simplex, surjection
// [k-1] ->> [dim of that simplex]).
struct NondegenerateSimplex {
    std::size_t dim = 0;
    std::vector<std::pair<std::size_t, SimplexMap>> faces;
};

// Simplicial set generated by nondegenerate simplices, truncated at n_max.
// Level n consists of pairs (x, η : [n] ->> [dim x]).
class GeneratedSimplicialSet {
  public:
    GeneratedSimplicialSet(std::vector<NondegenerateSimplex> gens, std::size_t basepoint, std::size_t n_max)
        : gens_(std::move(gens)), base_(basepoint), n_max_(n_max)
    {
        if (base_ >= gens_.size() || gens_[base_].dim != 0) throw InvalidInput("basepoint must be a vertex");
        for (std::size_t x = 0; x < gens_.size(); ++x) {
            const auto& g = gens_[x];
            if (g.faces.size() != (g.dim == 0 ? 0 : g.dim + 1)) throw InvalidInput("nondegenerate simplex: wrong face count");
            for (const auto& [z, zeta] : g.faces) {
                if (z >= gens_.size()) throw InvalidInput("nondegenerate simplex: unknown face");
                if (zeta.size() != g.dim) throw InvalidInput("nondegenerate simplex: face has wrong dimension");
                const auto em = simplex::factor(zeta);
                if (em.image.size() != gens_[z].dim + 1 || em.epi != zeta) throw InvalidInput("face is not in normal form");
            }
        }
        levels_.resize(n_max + 1);
        for (std::size_t n = 0; n <= n_max; ++n)
            for (std::size_t x = 0; x < gens_.size(); ++x)
                for (auto& eta : simplex::surjections(n, gens_[x].dim)) {
                    index_[n][{x, eta}] = static_cast<std::uint32_t>(levels_[n].size());
                    levels_[n].push_back({x, eta});
                }
    }

    // θ* (x, η) for θ : [m] -> [n].
    std::pair<std::size_t, SimplexMap> apply(const SimplexMap& theta, std::size_t x, const SimplexMap& eta) const
    {
        const auto em = simplex::factor(simplex::compose(eta, theta));
        const std::size_t k = gens_[x].dim;
        if (em.image.size() == k + 1) return {x, em.epi};
        std::size_t miss = 0;
        while (miss < em.image.size() && em.image[miss] == miss) ++miss;
        // δ = δ^miss ∘ δ''; recurse on the face d_miss x.
        SimplexMap theta2(em.epi.size());
        for (std::size_t t = 0; t < em.epi.size(); ++t) {
            const std::size_t v = em.image[em.epi[t]];
            theta2[t] = static_cast<std::uint8_t>(v < miss ? v : v - 1);
        }
        const auto& [z, zeta] = gens_[x].faces[miss];
        return apply(theta2, z, zeta);
    }

    FiniteSimplicialSet build() const
    {
        std::vector<std::size_t> sizes(n_max_ + 1);
        std::vector<std::vector<FiniteSimplicialSet::IndexMap>> faces(n_max_ + 1), degens(n_max_ + 1);
        std::vector<std::size_t> base(n_max_ + 1);
        for (std::size_t n = 0; n <= n_max_; ++n) {
            sizes[n] = levels_[n].size();
            base[n] = index_.at(n).at({base_, SimplexMap(n + 1, 0)});
        }
        auto induced = [&](const SimplexMap& theta, std::size_t n) {
            const std::size_t m = theta.size() - 1;
            FiniteSimplicialSet::IndexMap f(levels_[n].size());
            for (std::size_t i = 0; i < levels_[n].size(); ++i) {
                const auto& [x, eta] = levels_[n][i];
                f[i] = index_.at(m).at(apply(theta, x, eta));
            }
            return f;
        };
        for (std::size_t n = 1; n <= n_max_; ++n)
            for (std::size_t i = 0; i <= n; ++i) faces[n].push_back(induced(simplex::coface(n, i), n));
        for (std::size_t n = 0; n < n_max_; ++n)
            for (std::size_t j = 0; j <= n; ++j) degens[n].push_back(induced(simplex::codegeneracy(n, j), n));
        return FiniteSimplicialSet(std::move(sizes), std::move(faces), std::move(degens), std::move(base));
    }

  private:
    std::vector<NondegenerateSimplex> gens_;
    std::size_t base_;
    std::size_t n_max_;
    std::vector<std::vector<std::pair<std::size_t, SimplexMap>>> levels_;
    std::map<std::size_t, std::map<std::pair<std::size_t, SimplexMap>, std::uint32_t>> index_;
};

inline FiniteSimplicialSet point_simplicial_set(std::size_t n_max)
{
    return GeneratedSimplicialSet({NondegenerateSimplex{}}, 0, n_max).build();
}

// One vertex and k nondegenerate edges (k = 1: the simplicial circle).
inline FiniteSimplicialSet wedge_of_circles(std::size_t k, std::size_t n_max)
{
    std::vector<NondegenerateSimplex> g{NondegenerateSimplex{}};
    for (std::size_t e = 0; e < k; ++e) g.push_back({1, {{0, {0}}, {0, {0}}}});
    return GeneratedSimplicialSet(std::move(g), 0, n_max).build();
}

inline FiniteSimplicialSet circle(std::size_t n_max) { return wedge_of_circles(1, n_max); }

// One vertex and one nondegenerate 2-simplex with all faces degenerate.
inline FiniteSimplicialSet sphere2(std::size_t n_max)
{
    return GeneratedSimplicialSet({NondegenerateSimplex{}, {2, {{0, {0, 0}}, {0, {0, 0}}, {0, {0, 0}}}}}, 0, n_max).build();
}

// Bar construction BG: level n = G^n (base |G| encoding, g1 most
// significant); d_0 drops g1, d_n drops gn, d_i multiplies g_i g_{i+1};
// s_j inserts the identity at position j. Basepoint = identity tuple = 0.
inline FiniteSimplicialSet bar_construction(const FiniteGroup& g, std::size_t n_max, std::size_t guard = 1000000)
{
    const std::size_t q = g.order();
    std::vector<std::size_t> sizes(n_max + 1, 1);
    for (std::size_t n = 1; n <= n_max; ++n) {
        if (sizes[n - 1] > guard / q) throw SizeGuardExceeded("bar construction exceeds size guard");
        sizes[n] = sizes[n - 1] * q;
    }
    auto decode = [q](std::size_t idx, std::size_t n) {
        std::vector<std::size_t> t(n);
        for (std::size_t i = n; i-- > 0;) {
            t[i] = idx % q;
            idx /= q;
        }
        return t;
    };
    auto encode = [q](const std::vector<std::size_t>& t) {
        std::size_t idx = 0;
        for (auto v : t) idx = idx * q + v;
        return static_cast<std::uint32_t>(idx);
    };
    std::vector<std::vector<FiniteSimplicialSet::IndexMap>> faces(n_max + 1), degens(n_max + 1);
    for (std::size_t n = 1; n <= n_max; ++n)
        for (std::size_t i = 0; i <= n; ++i) {
            FiniteSimplicialSet::IndexMap f(sizes[n]);
            for (std::size_t x = 0; x < sizes[n]; ++x) {
                auto t = decode(x, n);
                std::vector<std::size_t> u;
                for (std::size_t k = 0; k < n; ++k) {
                    if ((i == 0 && k == 0) || (i == n && k == n - 1) || (i > 0 && i < n && k == i)) continue;
                    u.push_back((i > 0 && i < n && k == i - 1) ? g.mul(t[i - 1], t[i]) : t[k]);
                }
                f[x] = encode(u);
            }
            faces[n].push_back(std::move(f));
        }
    for (std::size_t n = 0; n < n_max; ++n)
        for (std::size_t j = 0; j <= n; ++j) {
            FiniteSimplicialSet::IndexMap s(sizes[n]);
            for (std::size_t x = 0; x < sizes[n]; ++x) {
                auto t = decode(x, n);
                t.insert(t.begin() + static_cast<std::ptrdiff_t>(j), 0);
                s[x] = encode(t);
            }
            degens[n].push_back(std::move(s));
        }
    return FiniteSimplicialSet(std::move(sizes), std::move(faces), std::move(degens), std::vector<std::size_t>(n_max + 1, 0));
}

// Levelwise free abelian group Z[X].
inline SimplicialAbGroup free_abelian(const FiniteSimplicialSet& x)
{
    const std::size_t top = x.truncation();
    auto to_matrix = [](const FiniteSimplicialSet::IndexMap& f, std::size_t rows) {
        SparseIntMatrix m(rows, f.size());
        for (std::size_t c = 0; c < f.size(); ++c) m.set_column(c, {{f[c], Integer(1)}});
        return m;
    };
    std::vector<std::size_t> ranks;
    std::vector<std::vector<SparseIntMatrix>> faces(top + 1), degens(top + 1);
    for (std::size_t n = 0; n <= top; ++n) {
        ranks.push_back(x.size(n));
        for (std::size_t i = 0; n > 0 && i <= n; ++i) faces[n].push_back(to_matrix(x.face(n, i), x.size(n - 1)));
        for (std::size_t j = 0; n < top && j <= n; ++j) degens[n].push_back(to_matrix(x.degeneracy(n, j), x.size(n + 1)));
    }
    return SimplicialAbGroup(std::move(ranks), std::move(faces), std::move(degens));
}

// Relabel the simplices of each level: new index perm[n][a] carries old a.
inline FiniteSimplicialSet relabel(const FiniteSimplicialSet& x, const std::vector<std::vector<std::uint32_t>>& perm)
{
    const std::size_t top = x.truncation();
    std::vector<std::vector<std::uint32_t>> inv(top + 1);
    for (std::size_t n = 0; n <= top; ++n) {
        inv[n].assign(x.size(n), 0);
        for (std::size_t a = 0; a < x.size(n); ++a) inv[n][perm[n][a]] = static_cast<std::uint32_t>(a);
    }
    auto conj = [&](const FiniteSimplicialSet::IndexMap& f, std::size_t from, std::size_t to) {
        FiniteSimplicialSet::IndexMap g(f.size());
        for (std::size_t a = 0; a < f.size(); ++a) g[a] = perm[to][f[inv[from][a]]];
        return g;
    };
    std::vector<std::size_t> sizes, base;
    std::vector<std::vector<FiniteSimplicialSet::IndexMap>> faces(top + 1), degens(top + 1);
    for (std::size_t n = 0; n <= top; ++n) {
        sizes.push_back(x.size(n));
        base.push_back(perm[n][x.basepoint(n)]);
        for (std::size_t i = 0; n > 0 && i <= n; ++i) faces[n].push_back(conj(x.face(n, i), n, n - 1));
        for (std::size_t j = 0; n < top && j <= n; ++j) degens[n].push_back(conj(x.degeneracy(n, j), n, n + 1));
    }
    return FiniteSimplicialSet(std::move(sizes), std::move(faces), std::move(degens), std::move(base));
}

// ---- symmetric powers and Dold-Thom ---------------------------------------------

inline constexpr std::size_t kDefaultOrbitGuard = 1000000;

namespace detail {

inline std::size_t multiset_count(std::size_t s, std::size_t n, std::size_t cap)
{
    // C(s + n - 1, n), saturating at cap + 1.
    if (s == 0) return n == 0 ? 1 : 0;
    long double c = 1;
    for (std::size_t i = 1; i <= n; ++i) {
        c = c * static_cast<long double>(s - 1 + i) / static_cast<long double>(i);
        if (c > static_cast<long double>(cap) + 1) return cap + 1;
    }
    return static_cast<std::size_t>(c + 0.5L);
}

// Orbits of (X_k)^n under S_n as sorted tuples.
inline std::vector<std::vector<std::uint32_t>> sorted_tuples(std::size_t s, std::size_t n)
{
    std::vector<std::vector<std::uint32_t>> out;
    std::vector<std::uint32_t> cur(n);
    std::function<void(std::size_t, std::uint32_t)> rec = [&](std::size_t pos, std::uint32_t lo) {
        if (pos == n) {
            out.push_back(cur);
            return;
        }
        for (std::uint32_t v = lo; v < s; ++v) {
            cur[pos] = v;
            rec(pos + 1, v);
        }
    };
    rec(0, 0);
    return out;
}

}  // namespace detail

// Number of S_n-orbits of (X_k)^n for k = 0..maxdeg.
inline std::vector<std::size_t> sym_power_orbit_counts(const FiniteSimplicialSet& x, std::size_t n, std::size_t maxdeg,
                                                       std::size_t guard = kDefaultOrbitGuard)
{
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k <= maxdeg; ++k) {
        const std::size_t c = detail::multiset_count(x.size(k), n, guard);
        if (c > guard) throw SizeGuardExceeded("Sym^" + std::to_string(n) + " has more than " + std::to_string(guard) +
                                               " orbits at level " + std::to_string(k));
        out.push_back(c);
    }
    return out;
}

// Reduced normalized chains of Sym^n X in degrees 0..maxdeg+1, so homology is
// exact through maxdeg: free on the nondegenerate orbits other than the
// basepoint. An orbit is degenerate iff every entry lies in the image of one
// common s_j.
inline ChainComplex sym_power_chains(const FiniteSimplicialSet& x, std::size_t n, std::size_t maxdeg,
                                     std::size_t guard = kDefaultOrbitGuard)
{
    if (n == 0) throw InvalidInput("symmetric power needs n >= 1");
    if (x.truncation() < maxdeg + 1) throw InvalidInput("simplicial set must reach level maxdeg + 1");
    const std::size_t top = maxdeg + 1;
    sym_power_orbit_counts(x, n, top, guard);

    std::vector<std::map<std::vector<std::uint32_t>, std::uint32_t>> cell_index(top + 1);
    std::vector<std::vector<std::vector<std::uint32_t>>> cells(top + 1);
    for (std::size_t k = 0; k <= top; ++k) {
        std::vector<std::vector<char>> images;
        for (std::size_t j = 0; k > 0 && j < k; ++j) images.push_back(x.image_of_degeneracy(k, j));
        const std::vector<std::uint32_t> base(n, static_cast<std::uint32_t>(x.basepoint(k)));
        for (auto& t : detail::sorted_tuples(x.size(k), n)) {
            if (t == base) continue;
            bool degenerate = false;
            for (const auto& im : images) {
                degenerate = std::all_of(t.begin(), t.end(), [&](std::uint32_t v) { return im[v] != 0; });
                if (degenerate) break;
            }
            if (degenerate) continue;
            cell_index[k][t] = static_cast<std::uint32_t>(cells[k].size());
            cells[k].push_back(std::move(t));
        }
    }
    std::vector<std::size_t> ranks;
    for (std::size_t k = 0; k <= top; ++k) ranks.push_back(cells[k].size());
    std::vector<SparseIntMatrix> d;
    for (std::size_t k = 1; k <= top; ++k) {
        SparseIntMatrix m(ranks[k - 1], ranks[k]);
        for (std::size_t c = 0; c < cells[k].size(); ++c) {
            SparseColumn col;
            for (std::size_t i = 0; i <= k; ++i) {
                std::vector<std::uint32_t> f;
                for (auto v : cells[k][c]) f.push_back(x.face(k, i)[v]);
                std::sort(f.begin(), f.end());
                auto it = cell_index[k - 1].find(f);
                if (it == cell_index[k - 1].end()) continue;
                col.emplace_back(it->second, (i % 2) ? Integer(-1) : Integer(1));
            }
            m.set_column(c, std::move(col));
        }
        d.push_back(std::move(m));
    }
    return ChainComplex(std::move(ranks), std::move(d));
}

// Reduced normalized chains of X itself.
inline ChainComplex reduced_chains(const FiniteSimplicialSet& x, std::size_t maxdeg)
{
    return sym_power_chains(x, 1, maxdeg);
}

struct DoldThomReport {
    std::size_t degree = 0;
    std::vector<FgAbGroup> values;  // H_deg(Sym^n X) for n = 1..n_max
    bool stabilized = false;
    std::optional<FgAbGroup> stable_value;
    FgAbGroup reduced_homology;  // reduced H_deg(X)
    bool matches = false;
};

inline DoldThomReport dold_thom_check(const FiniteSimplicialSet& x, std::size_t n_max, std::size_t deg,
                                      std::size_t guard = kDefaultOrbitGuard)
{
    if (x.truncation() < deg + 1) throw InvalidInput("dold_thom_check: simplicial set must reach level deg + 1");
    DoldThomReport r;
    r.degree = deg;
    for (std::size_t n = 1; n <= n_max; ++n) r.values.push_back(homology(sym_power_chains(x, n, deg, guard), deg));
    r.reduced_homology = homology(reduced_chains(x, deg), deg);
    if (r.values.size() >= 2 && r.values[r.values.size() - 1] == r.values[r.values.size() - 2]) {
        r.stabilized = true;
        r.stable_value = r.values.back();
    }
    r.matches = r.stabilized && *r.stable_value == r.reduced_homology;
    return r;
}

}  // namespace dcft
