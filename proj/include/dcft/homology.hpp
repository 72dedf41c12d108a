#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "dcft/abgroup.hpp"
#include "dcft/chain.hpp"
#include "dcft/error.hpp"
#include "dcft/integer.hpp"
#include "dcft/matrix.hpp"
#include "dcft/smith.hpp"

namespace dcft {

namespace detail {

template <class T>
using SparseVec = std::vector<std::pair<std::uint32_t, T>>;

// One elementary cancellation of a pair (x in C_n, y in C_{n-1}) joined by a
// unit coefficient eps of d_n. `column` is d_n(x) at that moment; `row`
// lists (z, <d_n z, y>) for the other surviving cells z of C_n.
template <class T>
struct Cancellation {
    std::size_t degree;  // n, the degree of x
    std::uint32_t x, y;
    T eps;
    SparseVec<T> column;
    SparseVec<T> row;
};

template <class T>
T coefficient(const SparseVec<T>& v, std::uint32_t idx)
{
    auto it = std::lower_bound(v.begin(), v.end(), idx, [](const auto& e, std::uint32_t i) { return e.first < i; });
    return (it != v.end() && it->first == idx) ? it->second : T(0);
}

// Reduces a window of a chain complex by cancelling unit entries of the
// differentials. Each cancellation is a homotopy equivalence; what remains
// is a (usually tiny) complex without unit entries.
template <class T>
class Reducer {
  public:
    Reducer(const ChainComplex& c, std::size_t lo, std::size_t hi, bool track) : lo_(lo), hi_(hi), track_(track)
    {
        const std::size_t k_max = hi - lo;
        alive_.resize(k_max + 1);
        stamp_.resize(k_max + 1);
        for (std::size_t k = 0; k <= k_max; ++k) {
            alive_[k].assign(c.rank(lo + k), 1);
            stamp_[k].assign(c.rank(lo + k), 0);
        }
        cols_.resize(k_max + 1);
        rows_.resize(k_max + 1);
        for (std::size_t k = 1; k <= k_max; ++k) {
            const SparseIntMatrix& d = c.differential(lo + k);
            cols_[k].resize(d.cols());
            rows_[k].resize(d.rows());
            for (std::size_t j = 0; j < d.cols(); ++j) {
                auto& col = cols_[k][j];
                col.reserve(d.column(j).size());
                for (const auto& [i, v] : d.column(j)) {
                    if constexpr (std::is_same_v<T, Integer>)
                        col.emplace_back(static_cast<std::uint32_t>(i), v);
                    else
                        col.emplace_back(static_cast<std::uint32_t>(i), to_int64(v));
                    rows_[k][i].push_back(static_cast<std::uint32_t>(j));
                }
            }
        }
    }

    void run()
    {
        for (std::size_t k = 1; k < cols_.size(); ++k) {
            bool progress = true;
            while (progress) {
                progress = false;
                std::vector<std::uint32_t> order;
                for (std::uint32_t x = 0; x < cols_[k].size(); ++x)
                    if (alive_[k][x] && !cols_[k][x].empty()) order.push_back(x);
                std::stable_sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
                    return cols_[k][a].size() < cols_[k][b].size();
                });
                for (std::uint32_t x : order) {
                    if (!alive_[k][x]) continue;
                    const auto& col = cols_[k][x];
                    std::optional<std::pair<std::uint32_t, T>> pivot;
                    std::size_t best = 0;
                    for (const auto& [y, v] : col) {
                        if (!is_unit(v)) continue;
                        const std::size_t weight = rows_[k][y].size();
                        if (!pivot || weight < best) {
                            pivot = std::make_pair(y, v);
                            best = weight;
                        }
                    }
                    if (!pivot) continue;
                    cancel(k, x, pivot->first, pivot->second);
                    progress = true;
                }
            }
        }
    }

    std::size_t lo() const { return lo_; }
    std::size_t hi() const { return hi_; }

    // Surviving cells of degree lo + k, as original indices.
    std::vector<std::size_t> survivors(std::size_t k) const
    {
        std::vector<std::size_t> s;
        for (std::size_t i = 0; i < alive_[k].size(); ++i)
            if (alive_[k][i]) s.push_back(i);
        return s;
    }

    // Residual differential d_{lo+k} restricted to survivors, dense.
    IntMatrix residual(std::size_t k) const
    {
        const auto rows = survivors(k - 1);
        const auto cols = survivors(k);
        std::vector<std::size_t> pos(alive_[k - 1].size(), 0);
        for (std::size_t i = 0; i < rows.size(); ++i) pos[rows[i]] = i;
        IntMatrix m(rows.size(), cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j)
            for (const auto& [i, v] : cols_[k][cols[j]]) m(pos[i], j) = to_integer(v);
        return m;
    }

    std::vector<Cancellation<Integer>> records() const
    {
        std::vector<Cancellation<Integer>> out;
        out.reserve(records_.size());
        for (const auto& r : records_) {
            Cancellation<Integer> c{r.degree, r.x, r.y, to_integer(r.eps), {}, {}};
            for (const auto& [i, v] : r.column) c.column.emplace_back(i, to_integer(v));
            for (const auto& [i, v] : r.row) c.row.emplace_back(i, to_integer(v));
            out.push_back(std::move(c));
        }
        return out;
    }

  private:
    // col_z += factor * col_x; new row entries are registered in rows_[k].
    void axpy(std::size_t k, std::uint32_t z, const T& factor, const SparseVec<T>& colx)
    {
        auto& colz = cols_[k][z];
        SparseVec<T> out;
        out.reserve(colz.size() + colx.size());
        std::size_t a = 0, b = 0;
        while (a < colz.size() || b < colx.size()) {
            if (b == colx.size() || (a < colz.size() && colz[a].first < colx[b].first)) {
                out.push_back(colz[a++]);
            } else if (a == colz.size() || colx[b].first < colz[a].first) {
                T v = checked::mul(factor, colx[b].second);
                out.emplace_back(colx[b].first, v);
                rows_[k][colx[b].first].push_back(z);
                ++b;
            } else {
                T v = checked::add(colz[a].second, checked::mul(factor, colx[b].second));
                if (v != 0) out.emplace_back(colz[a].first, v);
                ++a;
                ++b;
            }
        }
        colz = std::move(out);
    }

    void cancel(std::size_t k, std::uint32_t x, std::uint32_t y, T eps)
    {
        SparseVec<T> colx = cols_[k][x];
        SparseVec<T> row;
        const std::uint32_t tag = ++tick_;
        std::vector<std::uint32_t> touching = std::move(rows_[k][y]);
        rows_[k][y].clear();
        for (std::uint32_t z : touching) {
            if (z == x || !alive_[k][z] || stamp_[k][z] == tag) continue;
            stamp_[k][z] = tag;
            T c = coefficient(cols_[k][z], y);
            if (c == 0) continue;
            if (track_) row.emplace_back(z, c);
            // eps is a unit, eps^{-1} = eps.
            axpy(k, z, checked::mul(T(-1), checked::mul(c, eps)), colx);
        }
        alive_[k][x] = 0;
        cols_[k][x].clear();
        alive_[k - 1][y] = 0;
        if (k + 1 < cols_.size()) {
            for (std::uint32_t w : rows_[k + 1][x]) {
                if (!alive_[k + 1][w]) continue;
                auto& cw = cols_[k + 1][w];
                auto it = std::lower_bound(cw.begin(), cw.end(), x, [](const auto& e, std::uint32_t i) { return e.first < i; });
                if (it != cw.end() && it->first == x) cw.erase(it);
            }
            rows_[k + 1][x].clear();
        }
        if (k >= 2) cols_[k - 1][y].clear();
        if (track_) {
            std::sort(row.begin(), row.end());
            records_.push_back({lo_ + k, x, y, eps, std::move(colx), std::move(row)});
        }
    }

    std::size_t lo_, hi_;
    bool track_;
    std::vector<std::vector<SparseVec<T>>> cols_;
    std::vector<std::vector<std::vector<std::uint32_t>>> rows_;
    std::vector<std::vector<char>> alive_;
    std::vector<std::vector<std::uint32_t>> stamp_;
    std::uint32_t tick_ = 0;
    std::vector<Cancellation<T>> records_;
};

}  // namespace detail

// Homology of a chain complex over a range of degrees, optionally with
// explicit cycle generators and a coordinate map from cycles to canonical
// coordinates (needed for induced maps).
class HomologyModel {
  public:
    HomologyModel(const ChainComplex& c, std::size_t lo, std::size_t hi, bool track = false)
        : lo_(lo), hi_(hi), track_(track)
    {
        if (lo > hi || hi > c.top_degree())
            throw DegreeOutOfRange("homology degrees [" + std::to_string(lo) + ", " + std::to_string(hi) +
                                   "] outside complex of top degree " + std::to_string(c.top_degree()));
        ranks_ = c.ranks();
        const std::size_t wlo = lo == 0 ? 0 : lo - 1;
        const std::size_t whi = std::min(hi + 1, c.top_degree());
        try {
            build<std::int64_t>(c, wlo, whi);
        } catch (const Overflow&) {
            build<Integer>(c, wlo, whi);
        }
    }

    HomologyModel(const ChainComplex& c, bool track = false) : HomologyModel(c, 0, c.top_degree(), track) {}

    std::size_t lo() const { return lo_; }
    std::size_t hi() const { return hi_; }

    const FgAbGroup& group(std::size_t n) const { return at(n).group; }

    // Cycles in the original basis of C_n, one per canonical generator.
    std::vector<std::vector<Integer>> generators(std::size_t n) const
    {
        require_tracking();
        const Degree& h = at(n);
        std::vector<std::vector<Integer>> out;
        for (std::size_t g = 0; g < h.group.generator_count(); ++g) {
            std::vector<Integer> residual = h.kernel_basis.apply(h.presentation.from_canonical.column(g));
            std::vector<Integer> z(ranks_[n]);
            for (std::size_t i = 0; i < h.survivors.size(); ++i) z[h.survivors[i]] = residual[i];
            out.push_back(lift(n, std::move(z)));
        }
        return out;
    }

    // Canonical coordinates of the homology class of a cycle of C_n.
    std::vector<Integer> coordinates(std::size_t n, std::vector<Integer> z) const
    {
        require_tracking();
        const Degree& h = at(n);
        if (z.size() != ranks_[n]) throw InvalidInput("cycle has wrong length");
        project(n, z);
        std::vector<Integer> residual(h.survivors.size());
        for (std::size_t i = 0; i < h.survivors.size(); ++i) residual[i] = z[h.survivors[i]];
        return h.presentation.coordinates(h.kernel_coords.apply(residual));
    }

  private:
    struct Degree {
        FgAbGroup group;
        std::vector<std::size_t> survivors;
        IntMatrix kernel_basis;   // survivors x k
        IntMatrix kernel_coords;  // k x survivors
        Presentation presentation;
    };

    template <class T>
    void build(const ChainComplex& c, std::size_t wlo, std::size_t whi)
    {
        detail::Reducer<T> red(c, wlo, whi, track_);
        red.run();
        degrees_.clear();
        for (std::size_t n = lo_; n <= hi_; ++n) {
            const std::size_t k = n - wlo;
            Degree h;
            h.survivors = red.survivors(k);
            const std::size_t m = h.survivors.size();
            IntMatrix out = (n == 0 || k == 0) ? IntMatrix(0, m) : red.residual(k);
            IntMatrix in = (n + 1 <= whi) ? red.residual(k + 1) : IntMatrix(m, 0);
            if (n == 0) out = IntMatrix(0, m);
            h.kernel_basis = kernel_basis(out, &h.kernel_coords);
            h.presentation = present_cokernel(h.kernel_coords * in);
            h.group = h.presentation.group;
            degrees_.push_back(std::move(h));
        }
        if (track_) records_ = red.records();
    }

    const Degree& at(std::size_t n) const
    {
        if (n < lo_ || n > hi_) throw DegreeOutOfRange("homology degree " + std::to_string(n) + " not computed");
        return degrees_[n - lo_];
    }

    void require_tracking() const
    {
        if (!track_) throw InvalidInput("homology model built without generator tracking");
    }

    // Projection onto the reduced complex, composed in cancellation order.
    void project(std::size_t n, std::vector<Integer>& z) const
    {
        for (const auto& r : records_) {
            if (r.degree == n + 1) {
                const Integer cy = z[r.y];
                if (cy == 0) continue;
                const Integer f = cy * r.eps;
                for (const auto& [i, v] : r.column) z[i] -= f * v;
            } else if (r.degree == n) {
                z[r.x] = 0;
            }
        }
    }

    // Inclusion of the reduced complex, composed in reverse order.
    std::vector<Integer> lift(std::size_t n, std::vector<Integer> z) const
    {
        for (auto it = records_.rbegin(); it != records_.rend(); ++it) {
            if (it->degree != n) continue;
            Integer s = 0;
            for (const auto& [w, v] : it->row)
                if (z[w] != 0) s += z[w] * v;
            z[it->x] = -it->eps * s;
        }
        return z;
    }

    std::size_t lo_, hi_;
    bool track_;
    std::vector<std::size_t> ranks_;
    std::vector<Degree> degrees_;
    std::vector<detail::Cancellation<Integer>> records_;
};

// H_n = ker d_n / im d_{n+1}. At top_degree the incoming differential is
// missing; see ChainComplex::reliable.
inline FgAbGroup homology(const ChainComplex& c, std::size_t n)
{
    if (n > c.top_degree())
        throw DegreeOutOfRange("homology degree " + std::to_string(n) + " exceeds top degree " + std::to_string(c.top_degree()));
    return HomologyModel(c, n, n).group(n);
}

inline std::vector<FgAbGroup> homology_all(const ChainComplex& c)
{
    HomologyModel m(c);
    std::vector<FgAbGroup> out;
    for (std::size_t n = 0; n <= c.top_degree(); ++n) out.push_back(m.group(n));
    return out;
}

// Map on H_n induced by a chain map, in canonical coordinates.
inline AbHom induced_map(const SparseIntMatrix& f_n, const HomologyModel& src, const HomologyModel& dst, std::size_t n)
{
    AbHom h = AbHom::zero(src.group(n), dst.group(n));
    auto gens = src.generators(n);
    for (std::size_t g = 0; g < gens.size(); ++g) {
        std::vector<Integer> image = f_n.apply(gens[g]);
        auto coords = dst.coordinates(n, std::move(image));
        for (std::size_t i = 0; i < coords.size(); ++i) h.matrix(i, g) = coords[i];
    }
    return h.normalized();
}

}  // namespace dcft
