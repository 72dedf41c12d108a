#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "dcft/error.hpp"
#include "dcft/integer.hpp"
#include "dcft/matrix.hpp"
#include "dcft/smith.hpp"

namespace dcft {

// Finitely generated abelian group Z^free_rank + Z/t_1 + ... + Z/t_k in
// invariant-factor form: every t_i >= 2 and t_i | t_{i+1}. Two groups are
// isomorphic iff the fields are equal.
//
// Whenever a group comes with explicit generators (presentations, homology,
// homomorphism matrices) the generator order is: torsion generators in the
// order of `torsion`, then the free generators.
struct FgAbGroup {
    std::size_t free_rank = 0;
    std::vector<Integer> torsion;

    static FgAbGroup trivial() { return {}; }
    static FgAbGroup free(std::size_t rank) { return {rank, {}}; }
    static FgAbGroup cyclic(const Integer& n)
    {
        if (n < 0) throw InvalidInput("cyclic group of negative order");
        if (n == 0) return free(1);
        if (n == 1) return trivial();
        return {0, {n}};
    }

    std::size_t generator_count() const { return torsion.size() + free_rank; }
    bool is_trivial() const { return free_rank == 0 && torsion.empty(); }
    bool is_finite() const { return free_rank == 0; }

    // Order of a finite group; nullopt when free_rank > 0.
    std::optional<Integer> order() const
    {
        if (free_rank) return std::nullopt;
        Integer o = 1;
        for (const auto& t : torsion) o *= t;
        return o;
    }

    // Exponent of the torsion part (1 for torsion-free groups).
    Integer exponent() const { return torsion.empty() ? Integer(1) : torsion.back(); }

    // Order of the i-th canonical generator; 0 for free generators.
    Integer generator_order(std::size_t i) const
    {
        return i < torsion.size() ? torsion[i] : Integer(0);
    }

    // Diagonal relation matrix of the canonical presentation.
    IntMatrix relation_matrix() const
    {
        IntMatrix r(generator_count(), torsion.size());
        for (std::size_t i = 0; i < torsion.size(); ++i) r(i, i) = torsion[i];
        return r;
    }

    std::string to_string() const
    {
        if (is_trivial()) return "0";
        std::ostringstream os;
        bool first = true;
        if (free_rank) {
            os << (free_rank == 1 ? std::string("Z") : "Z^" + std::to_string(free_rank));
            first = false;
        }
        for (const auto& t : torsion) {
            os << (first ? "" : " + ") << "Z/" << t;
            first = false;
        }
        return os.str();
    }

    friend bool operator==(const FgAbGroup&, const FgAbGroup&) = default;
    friend std::ostream& operator<<(std::ostream& os, const FgAbGroup& g) { return os << g.to_string(); }
};

inline bool iso_test(const FgAbGroup& g, const FgAbGroup& h) { return g == h; }

// Z^r / (column span of A) together with the change of generators.
struct Presentation {
    FgAbGroup group;
    // k x r: images of the standard generators of Z^r in canonical coordinates.
    IntMatrix to_canonical;
    // r x k: each canonical generator as a vector of Z^r.
    IntMatrix from_canonical;

    // Canonical coordinates of an element of Z^r, torsion entries reduced.
    std::vector<Integer> coordinates(const std::vector<Integer>& x) const
    {
        std::vector<Integer> c = to_canonical.apply(x);
        for (std::size_t i = 0; i < group.torsion.size(); ++i) c[i] = mod(c[i], group.torsion[i]);
        return c;
    }
};

inline Presentation present_cokernel(const IntMatrix& a)
{
    const std::size_t r = a.rows();
    SmithForm s = snf(a, {.left = true, .right = false});
    std::vector<std::size_t> keep;
    Presentation p;
    for (std::size_t i = 0; i < s.rank(); ++i)
        if (s.d[i] != 1) {
            keep.push_back(i);
            p.group.torsion.push_back(s.d[i]);
        }
    for (std::size_t i = s.rank(); i < r; ++i) keep.push_back(i);
    p.group.free_rank = r - s.rank();
    p.to_canonical = IntMatrix(keep.size(), r);
    p.from_canonical = IntMatrix(r, keep.size());
    for (std::size_t k = 0; k < keep.size(); ++k)
        for (std::size_t j = 0; j < r; ++j) {
            p.to_canonical(k, j) = s.U(keep[k], j);
            p.from_canonical(j, k) = s.U_inv(j, keep[k]);
        }
    return p;
}

// Canonical form of Z^rows / (column span of A).
inline FgAbGroup cokernel_presentation(const IntMatrix& a)
{
    SmithForm s = snf(a, {.left = false, .right = false});
    FgAbGroup g;
    g.free_rank = a.rows() - s.rank();
    for (const auto& d : s.d)
        if (d != 1) g.torsion.push_back(d);
    return g;
}

inline FgAbGroup from_invariants(std::size_t free_rank, const std::vector<Integer>& factors)
{
    IntMatrix rel(free_rank + factors.size(), factors.size());
    for (std::size_t i = 0; i < factors.size(); ++i) rel(free_rank + i, i) = factors[i];
    return cokernel_presentation(rel);
}

inline FgAbGroup direct_sum(const FgAbGroup& a, const FgAbGroup& b)
{
    std::vector<Integer> t = a.torsion;
    t.insert(t.end(), b.torsion.begin(), b.torsion.end());
    return from_invariants(a.free_rank + b.free_rank, t);
}

// A / nA  (= A tensor Z/n).
inline FgAbGroup quotient_by_multiple(const FgAbGroup& a, const Integer& n)
{
    std::vector<Integer> t;
    for (const auto& d : a.torsion) t.push_back(gcd(d, n));
    for (std::size_t i = 0; i < a.free_rank; ++i) t.push_back(n);
    return from_invariants(0, t);
}

// A[n] = {x : n x = 0}.
inline FgAbGroup n_torsion(const FgAbGroup& a, const Integer& n)
{
    std::vector<Integer> t;
    for (const auto& d : a.torsion) t.push_back(gcd(d, n));
    if (n == 0) return from_invariants(0, a.torsion);
    for (std::size_t i = 0; i < a.free_rank; ++i) t.push_back(1);
    return from_invariants(0, t);
}

// Homomorphism between canonical groups. Column j is the image of the j-th
// canonical generator of `source`, in canonical coordinates of `target`.
struct AbHom {
    FgAbGroup source;
    FgAbGroup target;
    IntMatrix matrix;

    static AbHom zero(const FgAbGroup& s, const FgAbGroup& t)
    {
        return {s, t, IntMatrix(t.generator_count(), s.generator_count())};
    }
    static AbHom identity(const FgAbGroup& g) { return {g, g, IntMatrix::identity(g.generator_count())}; }

    // Reduce torsion rows modulo the target orders (canonical matrix).
    AbHom normalized() const
    {
        AbHom h = *this;
        for (std::size_t i = 0; i < target.torsion.size(); ++i)
            for (std::size_t j = 0; j < h.matrix.cols(); ++j) h.matrix(i, j) = mod(h.matrix(i, j), target.torsion[i]);
        return h;
    }

    // Relations are respected: order(g_j) * image(g_j) == 0 in the target.
    bool is_well_defined() const
    {
        if (matrix.rows() != target.generator_count() || matrix.cols() != source.generator_count()) return false;
        for (std::size_t j = 0; j < source.generator_count(); ++j) {
            Integer o = source.generator_order(j);
            if (o == 0) continue;
            for (std::size_t i = 0; i < target.generator_count(); ++i) {
                Integer v = o * matrix(i, j);
                Integer t = target.generator_order(i);
                if (t == 0 ? v != 0 : mod(v, t) != 0) return false;
            }
        }
        return true;
    }

    std::vector<Integer> apply(const std::vector<Integer>& x) const
    {
        std::vector<Integer> y = matrix.apply(x);
        for (std::size_t i = 0; i < target.torsion.size(); ++i) y[i] = mod(y[i], target.torsion[i]);
        return y;
    }

    // target / image
    FgAbGroup cokernel() const { return cokernel_presentation(matrix.hconcat(target.relation_matrix())); }

    bool is_surjective() const { return cokernel().is_trivial(); }

    bool is_zero() const { return normalized().matrix.is_zero(); }

    // Surjections between isomorphic finitely generated abelian groups are
    // isomorphisms (Hopfian property).
    bool is_isomorphism() const { return source == target && is_surjective(); }

    friend bool operator==(const AbHom& a, const AbHom& b)
    {
        if (!(a.source == b.source) || !(a.target == b.target)) return false;
        return a.normalized().matrix == b.normalized().matrix;
    }

    // (g ∘ f)
    friend AbHom compose(const AbHom& g, const AbHom& f)
    {
        if (!(f.target == g.source)) throw InvalidInput("compose: incompatible groups");
        return AbHom{f.source, g.target, g.matrix * f.matrix}.normalized();
    }

    AbHom scaled(const Integer& k) const
    {
        AbHom h = *this;
        for (std::size_t i = 0; i < h.matrix.rows(); ++i)
            for (std::size_t j = 0; j < h.matrix.cols(); ++j) h.matrix(i, j) *= k;
        return h.normalized();
    }
};

// A tensor Zhat for finitely generated A: torsion kept, free part completed.
struct ProfiniteFgAb {
    std::size_t zhat_rank = 0;
    std::vector<Integer> torsion;

    FgAbGroup torsion_part() const { return from_invariants(0, torsion); }

    std::string to_string() const
    {
        if (zhat_rank == 0 && torsion.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        if (zhat_rank) {
            os << (zhat_rank == 1 ? std::string("Zhat") : "Zhat^" + std::to_string(zhat_rank));
            first = false;
        }
        for (const auto& t : torsion) {
            os << (first ? "" : " + ") << "Z/" << t;
            first = false;
        }
        return os.str();
    }

    friend bool operator==(const ProfiniteFgAb&, const ProfiniteFgAb&) = default;
};

inline ProfiniteFgAb profinite_complete(const FgAbGroup& g) { return {g.free_rank, g.torsion}; }

inline ProfiniteFgAb direct_sum(const ProfiniteFgAb& a, const ProfiniteFgAb& b)
{
    FgAbGroup t = direct_sum(a.torsion_part(), b.torsion_part());
    return {a.zhat_rank + b.zhat_rank, t.torsion};
}

// A finite abelian group handed over as a multiplication table on indices,
// identified with its canonical form. `log[x]` are the canonical coordinates
// of element x and `generators[i]` is an element realizing generator i.
struct FiniteAbelianStructure {
    FgAbGroup group;
    std::vector<std::size_t> generators;
    std::vector<std::vector<Integer>> log;

    std::size_t element(const std::vector<Integer>& coords,
                        const std::function<std::size_t(std::size_t, std::size_t)>& mul,
                        std::size_t identity) const
    {
        std::size_t x = identity;
        for (std::size_t i = 0; i < coords.size(); ++i) {
            Integer e = mod(coords[i], group.torsion[i]);
            for (Integer k = 0; k < e; ++k) x = mul(x, generators[i]);
        }
        return x;
    }
};

// Greedy generation: pick an element outside the current subgroup, record
// its relative order as a relation, extend the subgroup, repeat. The
// triangular relation matrix is then put into Smith form. Assumes the
// operation is commutative; callers verify that separately.
inline FiniteAbelianStructure finite_abelian_from_table(std::size_t n,
                                                        const std::function<std::size_t(std::size_t, std::size_t)>& mul,
                                                        std::size_t identity)
{
    std::vector<std::optional<std::vector<Integer>>> expo(n);
    std::vector<std::size_t> members{identity};
    std::vector<std::size_t> greedy;
    std::vector<std::vector<Integer>> relations;  // over greedy generators

    expo[identity] = std::vector<Integer>{};
    for (std::size_t cand = 0; cand < n; ++cand) {
        if (expo[cand]) continue;
        const std::size_t k = greedy.size();
        greedy.push_back(cand);
        for (auto& e : expo)
            if (e) e->push_back(0);
        // Relative order of cand modulo the current subgroup.
        std::size_t power = cand;
        std::size_t ord = 1;
        while (!expo[power]) {
            power = mul(power, cand);
            ++ord;
        }
        std::vector<Integer> rel = *expo[power];
        for (auto& v : rel) v = -v;
        rel[k] += ord;
        relations.push_back(rel);
        // Extend: members * cand^j for j = 1 .. ord-1.
        std::vector<std::size_t> added;
        for (std::size_t base : members) {
            std::size_t x = base;
            for (std::size_t j = 1; j < ord; ++j) {
                x = mul(x, cand);
                if (!expo[x]) {
                    std::vector<Integer> e = *expo[base];
                    e[k] += j;
                    expo[x] = std::move(e);
                    added.push_back(x);
                }
            }
        }
        members.insert(members.end(), added.begin(), added.end());
    }

    const std::size_t g = greedy.size();
    IntMatrix rel(g, g);
    for (std::size_t j = 0; j < g; ++j)
        for (std::size_t i = 0; i < relations[j].size(); ++i) rel(i, j) = relations[j][i];
    Presentation p = present_cokernel(rel);

    FiniteAbelianStructure out;
    out.group = p.group;
    out.log.resize(n);
    for (std::size_t x = 0; x < n; ++x) {
        std::vector<Integer> e = *expo[x];
        e.resize(g, 0);
        out.log[x] = p.coordinates(e);
    }
    // Realize each canonical generator as a product of greedy generators.
    for (std::size_t c = 0; c < p.group.generator_count(); ++c) {
        std::size_t x = identity;
        for (std::size_t i = 0; i < g; ++i) {
            Integer e = mod(p.from_canonical(i, c), Integer(static_cast<long>(n)));
            for (Integer k = 0; k < e; ++k) x = mul(x, greedy[i]);
        }
        out.generators.push_back(x);
    }
    return out;
}

}  // namespace dcft
