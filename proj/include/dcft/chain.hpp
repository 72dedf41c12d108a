#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dcft/error.hpp"
#include "dcft/matrix.hpp"
#include "dcft/smith.hpp"

namespace dcft {

// Connective chain complex of free abelian groups, truncated at top_degree:
//
//   C_top --d_top--> ... --d_2--> C_1 --d_1--> C_0
//
// Indexing is homological. A cohomological truncation tau_{<=0} corresponds
// to keeping chain degrees >= 0, which is the only range represented here.
// Homology at top_degree lacks its incoming differential and is therefore
// flagged unreliable.
class ChainComplex {
  public:
    ChainComplex() : ranks_{0} {}

    // differentials[n - 1] is d_n : C_n -> C_{n-1}, for n = 1 .. ranks.size() - 1.
    ChainComplex(std::vector<std::size_t> ranks, std::vector<SparseIntMatrix> differentials)
        : ranks_(std::move(ranks)), d_(std::move(differentials))
    {
        if (ranks_.empty()) throw InvalidInput("chain complex needs at least degree 0");
        if (d_.size() + 1 != ranks_.size()) throw InvalidInput("chain complex: need one differential per positive degree");
        for (std::size_t n = 1; n < ranks_.size(); ++n) {
            const auto& m = d_[n - 1];
            if (m.rows() != ranks_[n - 1] || m.cols() != ranks_[n])
                throw InvalidInput("chain complex: d_" + std::to_string(n) + " has shape " + std::to_string(m.rows()) +
                                   "x" + std::to_string(m.cols()) + ", expected " + std::to_string(ranks_[n - 1]) + "x" +
                                   std::to_string(ranks_[n]));
        }
    }

    static ChainComplex from_dense(std::vector<std::size_t> ranks, const std::vector<IntMatrix>& differentials)
    {
        std::vector<SparseIntMatrix> d;
        for (const auto& m : differentials) d.push_back(SparseIntMatrix::from_dense(m));
        return ChainComplex(std::move(ranks), std::move(d));
    }

    static ChainComplex zero(std::size_t top_degree)
    {
        std::vector<SparseIntMatrix> d(top_degree, SparseIntMatrix(0, 0));
        return ChainComplex(std::vector<std::size_t>(top_degree + 1, 0), std::move(d));
    }

    std::size_t top_degree() const { return ranks_.size() - 1; }
    std::size_t rank(std::size_t n) const { return n < ranks_.size() ? ranks_[n] : 0; }
    const std::vector<std::size_t>& ranks() const { return ranks_; }

    // d_n for 1 <= n <= top_degree.
    const SparseIntMatrix& differential(std::size_t n) const
    {
        if (n == 0 || n > top_degree()) throw DegreeOutOfRange("no differential d_" + std::to_string(n));
        return d_[n - 1];
    }

    bool reliable(std::size_t n) const { return n < top_degree(); }

    // Degrees of the source complex discarded by a negative shift.
    const std::vector<long>& dropped_degrees() const { return dropped_; }
    // True when the new degree 0 was replaced by cycles (connective cover).
    bool kernel_replaced() const { return kernel_replaced_; }

    void set_shift_metadata(std::vector<long> dropped, bool kernel_replaced)
    {
        dropped_ = std::move(dropped);
        kernel_replaced_ = kernel_replaced;
    }

    // Structural equality of ranks and differentials; shift metadata ignored.
    friend bool operator==(const ChainComplex& a, const ChainComplex& b)
    {
        return a.ranks_ == b.ranks_ && a.d_ == b.d_;
    }

  private:
    std::vector<std::size_t> ranks_;
    std::vector<SparseIntMatrix> d_;
    std::vector<long> dropped_;
    bool kernel_replaced_ = false;
};

struct ChainViolation {
    std::size_t degree;
    std::string message;
};

// First degree n at which d_{n-1} ∘ d_n != 0, if any. Shapes are checked at
// construction.
inline std::optional<ChainViolation> find_violation(const ChainComplex& c)
{
    for (std::size_t n = 2; n <= c.top_degree(); ++n) {
        SparseIntMatrix p = c.differential(n - 1) * c.differential(n);
        if (!p.is_zero())
            return ChainViolation{n, "d_" + std::to_string(n - 1) + " * d_" + std::to_string(n) + " != 0"};
    }
    return std::nullopt;
}

inline void validate(const ChainComplex& c)
{
    if (auto v = find_violation(c)) throw ValidationError("chain complex invalid at degree " + std::to_string(v->degree) + ": " + v->message);
}

// Moves the content of degree m to degree m + k (so shift(C, -1) is C[-1]:
// H_n(shift(C, k)) = H_{n-k}(C)). Differentials pick up the sign (-1)^k.
// Degrees that would become negative are dropped and recorded; if the
// differential leaving the new degree 0 was nonzero, the new degree 0 is
// replaced by its cycles so homology is preserved in every retained degree.
inline ChainComplex shift(const ChainComplex& c, long k)
{
    const long top = static_cast<long>(c.top_degree());
    const Integer sign = (k % 2 == 0) ? 1 : -1;
    if (k >= 0) {
        std::vector<std::size_t> ranks(static_cast<std::size_t>(k), 0);
        ranks.insert(ranks.end(), c.ranks().begin(), c.ranks().end());
        std::vector<SparseIntMatrix> d;
        for (long n = 1; n <= top + k; ++n) {
            if (n <= k)
                d.emplace_back(ranks[n - 1], ranks[n]);
            else
                d.push_back(c.differential(static_cast<std::size_t>(n - k)).scaled(sign));
        }
        return ChainComplex(std::move(ranks), std::move(d));
    }

    const long j = -k;
    if (j > top) {
        ChainComplex z = ChainComplex::zero(0);
        std::vector<long> dropped;
        for (long m = 0; m <= top; ++m) dropped.push_back(m);
        z.set_shift_metadata(std::move(dropped), false);
        return z;
    }
    std::vector<long> dropped;
    for (long m = 0; m < j; ++m) dropped.push_back(m);

    std::vector<std::size_t> ranks(c.ranks().begin() + j, c.ranks().end());
    std::vector<SparseIntMatrix> d;
    for (long n = j + 1; n <= top; ++n) d.push_back(c.differential(static_cast<std::size_t>(n)).scaled(sign));

    bool replaced = false;
    if (j >= 1 && !c.differential(static_cast<std::size_t>(j)).is_zero()) {
        // Replace the new degree 0 by ker(d_j) in a saturated basis.
        IntMatrix coords;
        IntMatrix basis = kernel_basis(c.differential(static_cast<std::size_t>(j)).to_dense(), &coords);
        ranks[0] = basis.cols();
        if (!d.empty()) d[0] = SparseIntMatrix::from_dense(coords * d[0].to_dense());
        replaced = true;
    }
    ChainComplex out(std::move(ranks), std::move(d));
    out.set_shift_metadata(std::move(dropped), replaced);
    return out;
}

// Connective cover. All complexes here live in degrees >= 0 already, so this
// is the identity after validation; it is idempotent.
inline ChainComplex connective_truncate(const ChainComplex& c)
{
    validate(c);
    return c;
}

inline ChainComplex direct_sum(const ChainComplex& a, const ChainComplex& b)
{
    const std::size_t top = std::max(a.top_degree(), b.top_degree());
    std::vector<std::size_t> ranks(top + 1);
    for (std::size_t n = 0; n <= top; ++n) ranks[n] = a.rank(n) + b.rank(n);
    std::vector<SparseIntMatrix> d;
    for (std::size_t n = 1; n <= top; ++n) {
        SparseIntMatrix m(ranks[n - 1], ranks[n]);
        if (n <= a.top_degree()) {
            const auto& da = a.differential(n);
            for (std::size_t j = 0; j < da.cols(); ++j) m.set_column(j, da.column(j));
        }
        if (n <= b.top_degree()) {
            const auto& db = b.differential(n);
            const std::size_t r0 = a.rank(n - 1), c0 = a.rank(n);
            for (std::size_t j = 0; j < db.cols(); ++j) {
                SparseColumn col;
                for (const auto& [i, v] : db.column(j)) col.emplace_back(i + r0, v);
                m.set_column(c0 + j, std::move(col));
            }
        }
        d.push_back(std::move(m));
    }
    return ChainComplex(std::move(ranks), std::move(d));
}

// Alternating sum of ranks.
inline long euler_characteristic(const ChainComplex& c)
{
    long chi = 0;
    for (std::size_t n = 0; n <= c.top_degree(); ++n) chi += (n % 2 ? -1L : 1L) * static_cast<long>(c.rank(n));
    return chi;
}

// Chain map between complexes, one sparse matrix per degree 0..top.
struct ChainMap {
    std::vector<SparseIntMatrix> components;

    const SparseIntMatrix& at(std::size_t n) const { return components.at(n); }
};

// f_{n-1} ∘ d_n == d_n ∘ f_n for every degree both complexes carry.
inline bool is_chain_map(const ChainMap& f, const ChainComplex& src, const ChainComplex& dst)
{
    const std::size_t top = std::min({src.top_degree(), dst.top_degree(), f.components.size() - 1});
    for (std::size_t n = 1; n <= top; ++n)
        if (!(f.at(n - 1) * src.differential(n) == dst.differential(n) * f.at(n))) return false;
    return true;
}

}  // namespace dcft
