#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "dcft/integer.hpp"
#include "dcft/matrix.hpp"

namespace dcft {

// Column-style Hermite normal form: H = A * V with V unimodular, H in
// column echelon form (pivot rows strictly increasing), pivots positive,
// entries left of a pivot reduced into [0, pivot), zero columns last.
inline IntMatrix hnf(IntMatrix a)
{
    const std::size_t m = a.rows(), n = a.cols();
    std::size_t p = 0;
    for (std::size_t i = 0; i < m && p < n; ++i) {
        for (;;) {
            std::size_t best = n;
            for (std::size_t j = p; j < n; ++j)
                if (a(i, j) != 0 && (best == n || ::abs(a(i, j)) < ::abs(a(i, best)))) best = j;
            if (best == n) break;
            a.swap_cols(p, best);
            bool clean = true;
            for (std::size_t j = p + 1; j < n; ++j) {
                if (a(i, j) == 0) continue;
                a.add_col(j, p, -floor_div(a(i, j), a(i, p)));
                if (a(i, j) != 0) clean = false;
            }
            if (clean) break;
        }
        if (a(i, p) == 0) continue;
        if (a(i, p) < 0) a.negate_col(p);
        for (std::size_t j = 0; j < p; ++j) a.add_col(j, p, -floor_div(a(i, j), a(i, p)));
        ++p;
    }
    return a;
}

struct SmithForm {
    // Nonzero invariant factors d_1 | d_2 | ... | d_rank, all positive.
    std::vector<Integer> d;
    std::size_t rows = 0;
    std::size_t cols = 0;
    // U * A * V = diag(d, 0...). Inverses are kept for coordinate changes.
    IntMatrix U, V, U_inv, V_inv;

    std::size_t rank() const { return d.size(); }
};

struct SmithOptions {
    bool left = true;   // compute U and U_inv
    bool right = true;  // compute V and V_inv
};

namespace detail {

// Elementary operations applied to the working matrix and mirrored on the
// requested transforms.
struct SmithState {
    IntMatrix a;
    std::optional<IntMatrix> u, u_inv, v, v_inv;

    // row_i += q * row_t
    void add_row(std::size_t i, std::size_t t, const Integer& q)
    {
        a.add_row(i, t, q);
        if (u) {
            u->add_row(i, t, q);
            u_inv->add_col(t, i, -q);
        }
    }
    // col_j += q * col_t
    void add_col(std::size_t j, std::size_t t, const Integer& q)
    {
        a.add_col(j, t, q);
        if (v) {
            v->add_col(j, t, q);
            v_inv->add_row(t, j, -q);
        }
    }
    void swap_rows(std::size_t i, std::size_t j)
    {
        a.swap_rows(i, j);
        if (u) {
            u->swap_rows(i, j);
            u_inv->swap_cols(i, j);
        }
    }
    void swap_cols(std::size_t i, std::size_t j)
    {
        a.swap_cols(i, j);
        if (v) {
            v->swap_cols(i, j);
            v_inv->swap_rows(i, j);
        }
    }
    void negate_row(std::size_t i)
    {
        a.negate_row(i);
        if (u) {
            u->negate_row(i);
            u_inv->negate_col(i);
        }
    }
};

}  // namespace detail

// Smith normal form. Pivot = nonzero entry of minimal absolute value in the
// remaining block; row and column entries are reduced to nearest remainders
// after each pivot choice, and the divisibility chain is enforced in place.
inline SmithForm snf(const IntMatrix& a, SmithOptions opt = {})
{
    const std::size_t m = a.rows(), n = a.cols();
    detail::SmithState s{a, {}, {}, {}, {}};
    if (opt.left) {
        s.u = IntMatrix::identity(m);
        s.u_inv = IntMatrix::identity(m);
    }
    if (opt.right) {
        s.v = IntMatrix::identity(n);
        s.v_inv = IntMatrix::identity(n);
    }
    IntMatrix& w = s.a;

    std::size_t t = 0;
    for (; t < m && t < n; ++t) {
        // Global minimal pivot in the remaining block.
        std::size_t pi = m, pj = n;
        for (std::size_t i = t; i < m; ++i)
            for (std::size_t j = t; j < n; ++j)
                if (w(i, j) != 0 && (pi == m || ::abs(w(i, j)) < ::abs(w(pi, pj)))) {
                    pi = i;
                    pj = j;
                }
        if (pi == m) break;
        s.swap_rows(t, pi);
        s.swap_cols(t, pj);

        for (;;) {
            bool residue = false;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (w(i, t) == 0) continue;
                s.add_row(i, t, -nearest_div(w(i, t), w(t, t)));
                if (w(i, t) != 0) residue = true;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (w(t, j) == 0) continue;
                s.add_col(j, t, -nearest_div(w(t, j), w(t, t)));
                if (w(t, j) != 0) residue = true;
            }
            if (residue) {
                // A smaller remainder now sits in row t or column t.
                std::size_t bi = t, bj = t;
                for (std::size_t i = t + 1; i < m; ++i)
                    if (w(i, t) != 0 && ::abs(w(i, t)) < ::abs(w(bi, bj))) {
                        bi = i;
                        bj = t;
                    }
                for (std::size_t j = t + 1; j < n; ++j)
                    if (w(t, j) != 0 && ::abs(w(t, j)) < ::abs(w(bi, bj))) {
                        bi = t;
                        bj = j;
                    }
                s.swap_rows(t, bi);
                s.swap_cols(t, bj);
                continue;
            }
            // Row and column are clear; enforce divisibility of the rest.
            std::size_t bad = m;
            for (std::size_t i = t + 1; i < m && bad == m; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (w(i, j) != 0 && mod(w(i, j), w(t, t)) != 0) {
                        bad = i;
                        break;
                    }
            if (bad == m) break;
            s.add_row(t, bad, 1);
        }
        if (w(t, t) < 0) s.negate_row(t);
    }

    SmithForm out;
    out.rows = m;
    out.cols = n;
    for (std::size_t i = 0; i < t; ++i) out.d.push_back(w(i, i));
    if (s.u) {
        out.U = std::move(*s.u);
        out.U_inv = std::move(*s.u_inv);
    }
    if (s.v) {
        out.V = std::move(*s.v);
        out.V_inv = std::move(*s.v_inv);
    }
    return out;
}

// Basis of the integer kernel {x : A x = 0} as columns; saturated lattice.
// `coords` (if given) receives the left inverse on the kernel: coords * x
// yields kernel coordinates of any kernel vector x.
inline IntMatrix kernel_basis(const IntMatrix& a, IntMatrix* coords = nullptr)
{
    SmithForm s = snf(a, {.left = false, .right = true});
    const std::size_t r = s.rank(), n = a.cols();
    if (coords) *coords = s.V_inv.block(r, n, 0, n);
    return s.V.block(0, n, r, n);
}

// Integer solution x of A x = b, if one exists.
inline std::optional<std::vector<Integer>> solve_integer(const IntMatrix& a,
                                                         const std::vector<Integer>& b)
{
    SmithForm s = snf(a);
    std::vector<Integer> ub = s.U.apply(b);
    std::vector<Integer> y(a.cols());
    for (std::size_t i = 0; i < ub.size(); ++i) {
        if (i < s.rank()) {
            if (mod(ub[i], s.d[i]) != 0) return std::nullopt;
            y[i] = ub[i] / s.d[i];
        } else if (ub[i] != 0) {
            return std::nullopt;
        }
    }
    return s.V.apply(y);
}

}  // namespace dcft
