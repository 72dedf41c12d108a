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

#include "dcft/error.hpp"

namespace dcft {

// Finite group given by its multiplication table on indices 0..order-1.
// Index 0 is the identity.
class FiniteGroup {
  public:
    FiniteGroup() : FiniteGroup(1, {0}) {}

    // Validates the table exhaustively (closure, identity at 0, inverses,
    // associativity).
    FiniteGroup(std::size_t order, std::vector<std::uint32_t> table, std::vector<std::string> names = {},
                std::string label = {})
        : n_(order), table_(std::move(table)), names_(std::move(names)), label_(std::move(label))
    {
        if (n_ == 0) throw InvalidInput("group of order 0");
        if (table_.size() != n_ * n_) throw InvalidInput("group table must have order^2 entries");
        if (!names_.empty() && names_.size() != n_) throw InvalidInput("group element names: wrong count");
        for (auto v : table_)
            if (v >= n_) throw InvalidInput("group table entry out of range");
        for (std::size_t a = 0; a < n_; ++a)
            if (mul(0, a) != a || mul(a, 0) != a) throw InvalidInput("group table: index 0 is not the identity");
        inv_.assign(n_, n_);
        for (std::size_t a = 0; a < n_; ++a) {
            std::vector<char> seen(n_, 0);
            for (std::size_t b = 0; b < n_; ++b) {
                const auto c = mul(a, b);
                if (seen[c]) throw InvalidInput("group table: row " + std::to_string(a) + " is not a permutation");
                seen[c] = 1;
                if (c == 0) inv_[a] = static_cast<std::uint32_t>(b);
            }
        }
        for (std::size_t a = 0; a < n_; ++a)
            if (mul(inv_[a], a) != 0) throw InvalidInput("group table: left and right inverses differ");
        for (std::size_t a = 0; a < n_; ++a)
            for (std::size_t b = 0; b < n_; ++b)
                for (std::size_t c = 0; c < n_; ++c)
                    if (mul(mul(a, b), c) != mul(a, mul(b, c)))
                        throw InvalidInput("group table is not associative at (" + std::to_string(a) + "," +
                                           std::to_string(b) + "," + std::to_string(c) + ")");
    }

    std::size_t order() const { return n_; }
    std::size_t mul(std::size_t a, std::size_t b) const { return table_[a * n_ + b]; }
    std::size_t inverse(std::size_t a) const { return inv_[a]; }
    const std::vector<std::uint32_t>& table() const { return table_; }
    const std::vector<std::string>& names() const { return names_; }
    const std::string& label() const { return label_; }
    void set_label(std::string l) { label_ = std::move(l); }

    std::string element_name(std::size_t a) const { return names_.empty() ? std::to_string(a) : names_[a]; }

    std::size_t element_order(std::size_t a) const
    {
        std::size_t k = 1;
        for (std::size_t x = a; x != 0; x = mul(x, a)) ++k;
        return k;
    }

    bool is_abelian() const
    {
        for (std::size_t a = 0; a < n_; ++a)
            for (std::size_t b = a + 1; b < n_; ++b)
                if (mul(a, b) != mul(b, a)) return false;
        return true;
    }

    std::size_t commutator(std::size_t a, std::size_t b) const { return mul(mul(a, b), mul(inverse(a), inverse(b))); }

    friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) { return a.table_ == b.table_; }

  private:
    std::size_t n_;
    std::vector<std::uint32_t> table_;
    std::vector<std::uint32_t> inv_;
    std::vector<std::string> names_;
    std::string label_;
};

// Group homomorphism as an index map; image[a] = f(a).
using GroupMap = std::vector<std::size_t>;

inline bool is_homomorphism(const FiniteGroup& g, const FiniteGroup& h, const GroupMap& f)
{
    if (f.size() != g.order()) return false;
    for (auto v : f)
        if (v >= h.order()) return false;
    for (std::size_t a = 0; a < g.order(); ++a)
        for (std::size_t b = 0; b < g.order(); ++b)
            if (f[g.mul(a, b)] != h.mul(f[a], f[b])) return false;
    return true;
}

inline bool is_surjective(const FiniteGroup& h, const GroupMap& f)
{
    std::vector<char> hit(h.order(), 0);
    for (auto v : f) hit[v] = 1;
    return std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
}

// Closure of a generating set of elements of any type with a multiplication.
// The identity comes first; the remaining elements are listed in BFS order.
template <class T, class Mul>
FiniteGroup group_from_generators(const T& identity, const std::vector<T>& gens, Mul mul, std::string label = {},
                                  std::size_t cap = 100000)
{
    std::vector<T> elems{identity};
    std::map<T, std::uint32_t> index{{identity, 0}};
    for (std::size_t i = 0; i < elems.size(); ++i)
        for (const auto& g : gens) {
            T x = mul(elems[i], g);
            if (index.count(x)) continue;
            if (elems.size() >= cap) throw SizeGuardExceeded("generated group exceeds " + std::to_string(cap) + " elements");
            index.emplace(x, static_cast<std::uint32_t>(elems.size()));
            elems.push_back(std::move(x));
        }
    const std::size_t n = elems.size();
    std::vector<std::uint32_t> table(n * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) table[a * n + b] = index.at(mul(elems[a], elems[b]));
    return FiniteGroup(n, std::move(table), {}, std::move(label));
}

inline FiniteGroup cyclic_group(std::size_t n)
{
    std::vector<std::uint32_t> t(n * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) t[a * n + b] = static_cast<std::uint32_t>((a + b) % n);
    return FiniteGroup(n, std::move(t), {}, n == 1 ? "trivial" : "C" + std::to_string(n));
}

// (a, b) -> a * |B| + b
inline FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b)
{
    const std::size_t na = a.order(), nb = b.order(), n = na * nb;
    std::vector<std::uint32_t> t(n * n);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            t[x * n + y] = static_cast<std::uint32_t>(a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb));
    return FiniteGroup(n, std::move(t), {}, a.label() + "x" + b.label());
}

// N ⋊ K with action[k] an automorphism of N (index map); element (n, k) is
// n * |K| + k and (n, k)(n', k') = (n · action[k](n'), k k').
inline FiniteGroup semidirect_product(const FiniteGroup& nn, const FiniteGroup& kk, const std::vector<GroupMap>& action,
                                      std::string label = {})
{
    if (action.size() != kk.order()) throw InvalidInput("semidirect product: one automorphism per element of K");
    for (const auto& phi : action)
        if (!is_homomorphism(nn, nn, phi) || !is_surjective(nn, phi))
            throw InvalidInput("semidirect product: action is not by automorphisms");
    const std::size_t nk = kk.order(), n = nn.order() * nk;
    std::vector<std::uint32_t> t(n * n);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            const std::size_t n1 = x / nk, k1 = x % nk, n2 = y / nk, k2 = y % nk;
            t[x * n + y] = static_cast<std::uint32_t>(nn.mul(n1, action[k1][n2]) * nk + kk.mul(k1, k2));
        }
    return FiniteGroup(n, std::move(t), {}, std::move(label));
}

// <a, b | a^m = 1, b^k = a^s, b a b^-1 = a^r>; element a^i b^j is i * k + j.
// Needs r^k = 1 and r s = s modulo m.
inline FiniteGroup metacyclic_group(std::size_t m, std::size_t k, std::size_t r, std::size_t s, std::string label = {})
{
    std::vector<std::size_t> rp(k + 1, 1);
    for (std::size_t j = 1; j <= k; ++j) rp[j] = rp[j - 1] * r % m;
    if (rp[k] != 1 % m || (r * s) % m != s % m) throw InvalidInput("metacyclic parameters do not define a group");
    const std::size_t n = m * k;
    std::vector<std::uint32_t> t(n * n);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            const std::size_t i1 = x / k, j1 = x % k, i2 = y / k, j2 = y % k;
            std::size_t i = (i1 + rp[j1] * i2) % m, j = j1 + j2;
            if (j >= k) {
                j -= k;
                i = (i + s) % m;
            }
            t[x * n + y] = static_cast<std::uint32_t>(i * k + j);
        }
    return FiniteGroup(n, std::move(t), {}, std::move(label));
}

// Group generated by permutations of {0..degree-1} (composition: apply the
// right factor first).
inline FiniteGroup permutation_group(const std::vector<std::vector<std::uint8_t>>& gens, std::string label = {})
{
    if (gens.empty()) return FiniteGroup();
    const std::size_t deg = gens.front().size();
    std::vector<std::uint8_t> id(deg);
    for (std::size_t i = 0; i < deg; ++i) id[i] = static_cast<std::uint8_t>(i);
    auto compose = [](const std::vector<std::uint8_t>& p, const std::vector<std::uint8_t>& q) {
        std::vector<std::uint8_t> r(q.size());
        for (std::size_t i = 0; i < q.size(); ++i) r[i] = p[q[i]];
        return r;
    };
    return group_from_generators(id, gens, compose, std::move(label));
}

// Table relabelling by a permutation of indices fixing 0: new index
// perm[a] carries old element a.
inline FiniteGroup relabel(const FiniteGroup& g, const std::vector<std::size_t>& perm)
{
    const std::size_t n = g.order();
    if (perm.size() != n || perm[0] != 0) throw InvalidInput("relabel: permutation must fix the identity");
    std::vector<std::size_t> inv(n, n);
    for (std::size_t a = 0; a < n; ++a) {
        if (perm[a] >= n || inv[perm[a]] != n) throw InvalidInput("relabel: not a permutation");
        inv[perm[a]] = a;
    }
    std::vector<std::uint32_t> t(n * n);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) t[x * n + y] = static_cast<std::uint32_t>(perm[g.mul(inv[x], inv[y])]);
    return FiniteGroup(n, std::move(t), {}, g.label());
}

// ---- subgroups and quotients ---------------------------------------------

// Sorted element list of a subgroup; always starts with the identity 0.
struct Subgroup {
    std::vector<std::size_t> elements;
    std::string label;

    std::size_t order() const { return elements.size(); }
    bool contains(std::size_t a) const { return std::binary_search(elements.begin(), elements.end(), a); }
};

inline bool is_subgroup(const FiniteGroup& g, const std::vector<std::size_t>& elems)
{
    if (elems.empty() || g.order() % elems.size() != 0) return false;
    std::vector<char> in(g.order(), 0);
    for (auto a : elems) {
        if (a >= g.order()) return false;
        in[a] = 1;
    }
    if (!in[0]) return false;
    for (auto a : elems) {
        if (!in[g.inverse(a)]) return false;
        for (auto b : elems)
            if (!in[g.mul(a, b)]) return false;
    }
    return true;
}

inline Subgroup make_subgroup(const FiniteGroup& g, std::vector<std::size_t> elems, std::string label = {})
{
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    if (!is_subgroup(g, elems)) throw InvalidInput("element set is not a subgroup");
    return {std::move(elems), std::move(label)};
}

inline Subgroup generated_subgroup(const FiniteGroup& g, const std::vector<std::size_t>& gens, std::string label = {})
{
    std::vector<char> in(g.order(), 0);
    std::vector<std::size_t> elems{0};
    in[0] = 1;
    for (std::size_t i = 0; i < elems.size(); ++i)
        for (auto s : gens) {
            const auto x = g.mul(elems[i], s);
            if (!in[x]) {
                in[x] = 1;
                elems.push_back(x);
            }
        }
    std::sort(elems.begin(), elems.end());
    return {std::move(elems), std::move(label)};
}

inline Subgroup whole_group(const FiniteGroup& g)
{
    Subgroup h;
    for (std::size_t a = 0; a < g.order(); ++a) h.elements.push_back(a);
    h.label = g.label();
    return h;
}

inline bool is_normal(const FiniteGroup& g, const Subgroup& h)
{
    for (std::size_t x = 0; x < g.order(); ++x)
        for (auto a : h.elements)
            if (!h.contains(g.mul(g.mul(x, a), g.inverse(x)))) return false;
    return true;
}

inline std::size_t index_of(const FiniteGroup& g, const Subgroup& h) { return g.order() / h.order(); }

// Subgroup as a group in its own right; element i is parent element
// h.elements[i].
inline FiniteGroup subgroup_as_group(const FiniteGroup& g, const Subgroup& h)
{
    const std::size_t n = h.order();
    std::vector<std::size_t> pos(g.order(), n);
    for (std::size_t i = 0; i < n; ++i) pos[h.elements[i]] = i;
    std::vector<std::uint32_t> t(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) t[i * n + j] = static_cast<std::uint32_t>(pos[g.mul(h.elements[i], h.elements[j])]);
    std::vector<std::string> names;
    if (!g.names().empty())
        for (auto a : h.elements) names.push_back(g.names()[a]);
    return FiniteGroup(n, std::move(t), std::move(names), h.label);
}

// Right cosets Hg. coset_of[g] is the coset number; cosets are numbered by
// their smallest element, so coset 0 is H itself.
struct RightCosets {
    std::vector<std::size_t> coset_of;
    std::vector<std::size_t> smallest;
};

inline RightCosets right_cosets(const FiniteGroup& g, const Subgroup& h)
{
    RightCosets rc;
    rc.coset_of.assign(g.order(), g.order());
    for (std::size_t x = 0; x < g.order(); ++x) {
        if (rc.coset_of[x] != g.order()) continue;
        const std::size_t c = rc.smallest.size();
        rc.smallest.push_back(x);
        for (auto a : h.elements) rc.coset_of[g.mul(a, x)] = c;
    }
    return rc;
}

// Left cosets gH, numbered the same way.
inline RightCosets left_cosets(const FiniteGroup& g, const Subgroup& h)
{
    RightCosets lc;
    lc.coset_of.assign(g.order(), g.order());
    for (std::size_t x = 0; x < g.order(); ++x) {
        if (lc.coset_of[x] != g.order()) continue;
        const std::size_t c = lc.smallest.size();
        lc.smallest.push_back(x);
        for (auto a : h.elements) lc.coset_of[g.mul(x, a)] = c;
    }
    return lc;
}

// Quotient by a normal subgroup: cosets numbered by smallest element.
struct Quotient {
    FiniteGroup group;
    GroupMap projection;
};

inline Quotient quotient_group(const FiniteGroup& g, const Subgroup& nsub, std::string label = {})
{
    if (!is_normal(g, nsub)) throw InvalidInput("quotient by a non-normal subgroup");
    RightCosets rc = right_cosets(g, nsub);
    const std::size_t q = rc.smallest.size();
    std::vector<std::uint32_t> t(q * q);
    for (std::size_t i = 0; i < q; ++i)
        for (std::size_t j = 0; j < q; ++j)
            t[i * q + j] = static_cast<std::uint32_t>(rc.coset_of[g.mul(rc.smallest[i], rc.smallest[j])]);
    return {FiniteGroup(q, std::move(t), {}, std::move(label)), rc.coset_of};
}

inline Subgroup commutator_subgroup(const FiniteGroup& g)
{
    std::vector<std::size_t> comms;
    for (std::size_t a = 0; a < g.order(); ++a)
        for (std::size_t b = 0; b < g.order(); ++b) comms.push_back(g.commutator(a, b));
    std::sort(comms.begin(), comms.end());
    comms.erase(std::unique(comms.begin(), comms.end()), comms.end());
    return generated_subgroup(g, comms, "[G,G]");
}

inline Subgroup center(const FiniteGroup& g)
{
    std::vector<std::size_t> z;
    for (std::size_t a = 0; a < g.order(); ++a) {
        bool central = true;
        for (std::size_t b = 0; b < g.order() && central; ++b) central = g.mul(a, b) == g.mul(b, a);
        if (central) z.push_back(a);
    }
    return {z, "Z(G)"};
}

// ---- isomorphism search -----------------------------------------------------

// A small generating set, chosen greedily by descending element order.
inline std::vector<std::size_t> generating_set(const FiniteGroup& g)
{
    std::vector<std::size_t> cand(g.order());
    for (std::size_t a = 0; a < g.order(); ++a) cand[a] = a;
    std::stable_sort(cand.begin(), cand.end(), [&](auto x, auto y) { return g.element_order(x) > g.element_order(y); });
    std::vector<std::size_t> gens;
    Subgroup h = generated_subgroup(g, gens);
    for (auto a : cand) {
        if (h.order() == g.order()) break;
        if (h.contains(a)) continue;
        gens.push_back(a);
        h = generated_subgroup(g, gens);
    }
    return gens;
}

// Isomorphism g -> h by backtracking over images of a generating set.
inline std::optional<GroupMap> find_isomorphism(const FiniteGroup& g, const FiniteGroup& h)
{
    if (g.order() != h.order()) return std::nullopt;
    const std::size_t n = g.order();
    const auto gens = generating_set(g);
    // Every element of g as a word: (prefix element, generator index).
    std::vector<std::pair<std::size_t, std::size_t>> word(n, {n, 0});
    std::vector<std::size_t> bfs{0};
    std::vector<char> seen(n, 0);
    seen[0] = 1;
    for (std::size_t i = 0; i < bfs.size(); ++i)
        for (std::size_t k = 0; k < gens.size(); ++k) {
            const auto x = g.mul(bfs[i], gens[k]);
            if (!seen[x]) {
                seen[x] = 1;
                word[x] = {bfs[i], k};
                bfs.push_back(x);
            }
        }
    std::vector<std::size_t> images(gens.size());
    std::function<std::optional<GroupMap>(std::size_t)> search = [&](std::size_t k) -> std::optional<GroupMap> {
        if (k == gens.size()) {
            GroupMap f(n, n);
            f[0] = 0;
            for (std::size_t i = 1; i < bfs.size(); ++i) {
                const auto [pre, gi] = word[bfs[i]];
                f[bfs[i]] = h.mul(f[pre], images[gi]);
            }
            if (is_surjective(h, f) && is_homomorphism(g, h, f)) return f;
            return std::nullopt;
        }
        for (std::size_t y = 1; y < n; ++y) {
            if (h.element_order(y) != g.element_order(gens[k])) continue;
            images[k] = y;
            if (auto f = search(k + 1)) return f;
        }
        return std::nullopt;
    };
    if (n == 1) return GroupMap{0};
    return search(0);
}

// ---- catalog ----------------------------------------------------------------

namespace detail {

inline FiniteGroup labelled(FiniteGroup g, std::string label)
{
    g.set_label(std::move(label));
    return g;
}

// (C4 x C2) ⋊ C2 with the C2 generator acting by a -> a b^e1 ... as given.
inline FiniteGroup c4c2_by_c2(bool twist_a, std::string label)
{
    FiniteGroup n = direct_product(cyclic_group(4), cyclic_group(2));
    // element (i, j) = 2 i + j ~ a^i b^j
    GroupMap phi(8);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
            std::size_t ni, nj;
            if (twist_a) {  // a -> a b, b -> b
                ni = i;
                nj = (j + i) % 2;
            } else {  // a -> a, b -> a^2 b
                ni = (i + 2 * j) % 4;
                nj = j;
            }
            phi[2 * i + j] = 2 * ni + nj;
        }
    GroupMap id(8);
    for (std::size_t x = 0; x < 8; ++x) id[x] = x;
    return semidirect_product(n, cyclic_group(2), {id, phi}, std::move(label));
}

}  // namespace detail

// All groups of order <= 16 up to isomorphism, one table each, with stable
// names. Order 1 is "trivial".
inline std::vector<FiniteGroup> group_catalog()
{
    using detail::labelled;
    auto C = [](std::size_t n) { return cyclic_group(n); };
    auto x = [](const FiniteGroup& a, const FiniteGroup& b, std::string l) { return labelled(direct_product(a, b), l); };
    FiniteGroup d4 = metacyclic_group(4, 2, 3, 0, "D4");
    FiniteGroup q8 = metacyclic_group(4, 2, 3, 2, "Q8");
    FiniteGroup a4 = permutation_group({{1, 2, 0, 3}, {1, 0, 3, 2}}, "A4");

    std::vector<FiniteGroup> cat;
    cat.push_back(C(1));
    cat.push_back(C(2));
    cat.push_back(C(3));
    cat.push_back(C(4));
    cat.push_back(x(C(2), C(2), "C2xC2"));
    cat.push_back(C(5));
    cat.push_back(C(6));
    cat.push_back(metacyclic_group(3, 2, 2, 0, "S3"));
    cat.push_back(C(7));
    cat.push_back(C(8));
    cat.push_back(x(C(4), C(2), "C4xC2"));
    cat.push_back(x(x(C(2), C(2), ""), C(2), "C2xC2xC2"));
    cat.push_back(d4);
    cat.push_back(q8);
    cat.push_back(C(9));
    cat.push_back(x(C(3), C(3), "C3xC3"));
    cat.push_back(C(10));
    cat.push_back(metacyclic_group(5, 2, 4, 0, "D5"));
    cat.push_back(C(11));
    cat.push_back(C(12));
    cat.push_back(x(C(6), C(2), "C6xC2"));
    cat.push_back(a4);
    cat.push_back(metacyclic_group(6, 2, 5, 0, "D6"));
    cat.push_back(metacyclic_group(6, 2, 5, 3, "Dic3"));
    cat.push_back(C(13));
    cat.push_back(C(14));
    cat.push_back(metacyclic_group(7, 2, 6, 0, "D7"));
    cat.push_back(C(15));
    cat.push_back(C(16));
    cat.push_back(x(C(4), C(4), "C4xC4"));
    cat.push_back(detail::c4c2_by_c2(true, "(C4xC2):C2"));
    cat.push_back(metacyclic_group(4, 4, 3, 0, "C4:C4"));
    cat.push_back(x(C(8), C(2), "C8xC2"));
    cat.push_back(metacyclic_group(8, 2, 5, 0, "M16"));
    cat.push_back(metacyclic_group(8, 2, 7, 0, "D8"));
    cat.push_back(metacyclic_group(8, 2, 3, 0, "SD16"));
    cat.push_back(metacyclic_group(8, 2, 7, 4, "Q16"));
    cat.push_back(x(x(C(4), C(2), ""), C(2), "C4xC2xC2"));
    cat.push_back(x(C(2), d4, "C2xD4"));
    cat.push_back(x(C(2), q8, "C2xQ8"));
    cat.push_back(detail::c4c2_by_c2(false, "C4oD4"));
    cat.push_back(x(x(C(2), C(2), ""), x(C(2), C(2), ""), "C2^4"));
    return cat;
}

inline FiniteGroup catalog_group(const std::string& name)
{
    for (auto& g : group_catalog())
        if (g.label() == name) return g;
    throw InvalidInput("unknown catalog group '" + name + "'");
}

// Named subgroup pairs (G, H) used by the functoriality checks.
struct SubgroupPair {
    FiniteGroup group;
    Subgroup sub;
};

inline std::vector<SubgroupPair> subgroup_pair_catalog()
{
    std::vector<SubgroupPair> out;
    auto add = [&](const std::string& gname, const std::string& hname, auto pick) {
        FiniteGroup g = catalog_group(gname);
        Subgroup h = pick(g);
        h.label = hname;
        out.push_back({g, h});
    };
    auto by_order_gen = [](std::size_t ord) {
        // Cyclic subgroup generated by the smallest element of the given order.
        return [ord](const FiniteGroup& g) {
            for (std::size_t a = 0; a < g.order(); ++a)
                if (g.element_order(a) == ord) return generated_subgroup(g, {a});
            throw InvalidInput("no element of order " + std::to_string(ord));
        };
    };
    auto whole = [](const FiniteGroup& g) { return whole_group(g); };
    auto ctr = [](const FiniteGroup& g) { return center(g); };
    // Klein four subgroup made of elements of order <= 2 closing up.
    auto klein = [](const FiniteGroup& g) {
        for (std::size_t a = 1; a < g.order(); ++a)
            for (std::size_t b = a + 1; b < g.order(); ++b) {
                if (g.element_order(a) != 2 || g.element_order(b) != 2 || g.mul(a, b) != g.mul(b, a)) continue;
                Subgroup h = generated_subgroup(g, {a, b});
                if (h.order() == 4 && is_normal(g, h)) return h;
            }
        throw InvalidInput("no normal Klein four subgroup");
    };

    add("C2", "C2", whole);
    add("C4", "C2", by_order_gen(2));
    add("C2xC2", "C2", by_order_gen(2));
    add("C6", "C3", by_order_gen(3));
    add("C6", "C2", by_order_gen(2));
    add("S3", "A3", by_order_gen(3));
    add("S3", "C2", by_order_gen(2));
    add("S3", "S3", whole);
    add("C8", "C4", by_order_gen(4));
    add("D4", "C4", by_order_gen(4));
    add("D4", "V4", klein);
    add("D4", "Z(D4)", ctr);
    add("Q8", "C4", by_order_gen(4));
    add("Q8", "Z(Q8)", ctr);
    add("A4", "V4", klein);
    add("A4", "C3", by_order_gen(3));
    add("D5", "C5", by_order_gen(5));
    return out;
}

}  // namespace dcft
