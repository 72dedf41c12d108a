#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <utility>
#include <vector>

#include "dcft/error.hpp"
#include "dcft/integer.hpp"

namespace dcft {

// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
  public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    // Row-list literal: IntMatrix{{2, 4}, {6, 8}}.
    IntMatrix(std::initializer_list<std::initializer_list<long>> rows)
    {
        rows_ = rows.size();
        cols_ = rows_ ? rows.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& r : rows) {
            if (r.size() != cols_) throw InvalidInput("ragged matrix literal");
            for (long v : r) data_.emplace_back(v);
        }
    }

    static IntMatrix identity(std::size_t n)
    {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    static IntMatrix zero(std::size_t rows, std::size_t cols) { return IntMatrix(rows, cols); }

    static IntMatrix diagonal(const std::vector<Integer>& d)
    {
        IntMatrix m(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
        return m;
    }

    static IntMatrix from_rows(const std::vector<std::vector<Integer>>& rows, std::size_t cols = 0)
    {
        IntMatrix m(rows.size(), rows.empty() ? cols : rows.front().size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != m.cols_) throw InvalidInput("ragged matrix rows");
            for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    bool is_zero() const
    {
        return std::all_of(data_.begin(), data_.end(), [](const Integer& v) { return v == 0; });
    }

    std::vector<Integer> column(std::size_t j) const
    {
        std::vector<Integer> c(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
        return c;
    }

    std::vector<Integer> row(std::size_t i) const
    {
        return std::vector<Integer>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
    }

    void set_column(std::size_t j, const std::vector<Integer>& c)
    {
        for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = c[i];
    }

    IntMatrix transpose() const
    {
        IntMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    // Rows [r0, r1) and columns [c0, c1).
    IntMatrix block(std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1) const
    {
        IntMatrix b(r1 - r0, c1 - c0);
        for (std::size_t i = r0; i < r1; ++i)
            for (std::size_t j = c0; j < c1; ++j) b(i - r0, j - c0) = (*this)(i, j);
        return b;
    }

    // [A | B]
    IntMatrix hconcat(const IntMatrix& b) const
    {
        if (b.rows_ != rows_) throw InvalidInput("hconcat: row mismatch");
        IntMatrix m(rows_, cols_ + b.cols_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j);
            for (std::size_t j = 0; j < b.cols_; ++j) m(i, cols_ + j) = b(i, j);
        }
        return m;
    }

    // [A ; B]
    IntMatrix vconcat(const IntMatrix& b) const
    {
        if (b.cols_ != cols_) throw InvalidInput("vconcat: column mismatch");
        IntMatrix m(rows_ + b.rows_, cols_);
        std::copy(data_.begin(), data_.end(), m.data_.begin());
        std::copy(b.data_.begin(), b.data_.end(), m.data_.begin() + data_.size());
        return m;
    }

    std::vector<Integer> apply(const std::vector<Integer>& v) const
    {
        if (v.size() != cols_) throw InvalidInput("matrix-vector shape mismatch");
        std::vector<Integer> r(rows_);
        for (std::size_t i = 0; i < rows_; ++i) {
            Integer s = 0;
            for (std::size_t j = 0; j < cols_; ++j)
                if (v[j] != 0) s += (*this)(i, j) * v[j];
            r[i] = s;
        }
        return r;
    }

    // Row operations used by the elimination routines.
    void swap_rows(std::size_t a, std::size_t b)
    {
        if (a == b) return;
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
    }
    void swap_cols(std::size_t a, std::size_t b)
    {
        if (a == b) return;
        for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
    }
    // row_dst += q * row_src
    void add_row(std::size_t dst, std::size_t src, const Integer& q)
    {
        if (q == 0) return;
        for (std::size_t j = 0; j < cols_; ++j)
            if ((*this)(src, j) != 0) (*this)(dst, j) += q * (*this)(src, j);
    }
    // col_dst += q * col_src
    void add_col(std::size_t dst, std::size_t src, const Integer& q)
    {
        if (q == 0) return;
        for (std::size_t i = 0; i < rows_; ++i)
            if ((*this)(i, src) != 0) (*this)(i, dst) += q * (*this)(i, src);
    }
    void negate_row(std::size_t r)
    {
        for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = -(*this)(r, j);
    }
    void negate_col(std::size_t c)
    {
        for (std::size_t i = 0; i < rows_; ++i) (*this)(i, c) = -(*this)(i, c);
    }

    friend bool operator==(const IntMatrix& a, const IntMatrix& b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b)
    {
        if (a.cols_ != b.rows_) throw InvalidInput("matrix product shape mismatch");
        IntMatrix m(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Integer& x = a(i, k);
                if (x == 0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    if (b(k, j) != 0) m(i, j) += x * b(k, j);
            }
        return m;
    }

    friend std::ostream& operator<<(std::ostream& os, const IntMatrix& m)
    {
        os << '[';
        for (std::size_t i = 0; i < m.rows_; ++i) {
            os << (i ? ", [" : "[");
            for (std::size_t j = 0; j < m.cols_; ++j) os << (j ? ", " : "") << m(i, j);
            os << ']';
        }
        return os << ']';
    }

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Integer> data_;
};

// Exact determinant by fraction-free (Bareiss) elimination.
inline Integer determinant(IntMatrix a)
{
    if (a.rows() != a.cols()) throw InvalidInput("determinant of non-square matrix");
    const std::size_t n = a.rows();
    if (n == 0) return 1;
    Integer sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && a(p, k) == 0) ++p;
            if (p == n) return 0;
            a.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                Integer v = a(i, j) * a(k, k) - a(i, k) * a(k, j);
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
                a(i, j) = v;
            }
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

// Sparse column: (row, value) pairs sorted by row, no explicit zeros.
using SparseColumn = std::vector<std::pair<std::size_t, Integer>>;

// Column-compressed integer matrix; the storage for chain differentials.
class SparseIntMatrix {
  public:
    SparseIntMatrix() = default;
    SparseIntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), columns_(cols) {}

    static SparseIntMatrix from_dense(const IntMatrix& m)
    {
        SparseIntMatrix s(m.rows(), m.cols());
        for (std::size_t j = 0; j < m.cols(); ++j)
            for (std::size_t i = 0; i < m.rows(); ++i)
                if (m(i, j) != 0) s.columns_[j].emplace_back(i, m(i, j));
        return s;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return columns_.size(); }

    const SparseColumn& column(std::size_t j) const { return columns_[j]; }

    // Accumulates duplicates and drops zeros; rows need not be sorted.
    void set_column(std::size_t j, SparseColumn col)
    {
        std::sort(col.begin(), col.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        SparseColumn out;
        for (auto& [r, v] : col) {
            if (r >= rows_) throw InvalidInput("sparse entry out of range");
            if (!out.empty() && out.back().first == r)
                out.back().second += v;
            else
                out.emplace_back(r, std::move(v));
            if (out.back().second == 0) out.pop_back();
        }
        columns_[j] = std::move(out);
    }

    std::size_t nonzeros() const
    {
        std::size_t n = 0;
        for (const auto& c : columns_) n += c.size();
        return n;
    }

    bool is_zero() const { return nonzeros() == 0; }

    IntMatrix to_dense() const
    {
        IntMatrix m(rows_, cols());
        for (std::size_t j = 0; j < cols(); ++j)
            for (const auto& [i, v] : columns_[j]) m(i, j) = v;
        return m;
    }

    // y = A x for a dense x.
    std::vector<Integer> apply(const std::vector<Integer>& x) const
    {
        std::vector<Integer> y(rows_);
        for (std::size_t j = 0; j < cols(); ++j) {
            if (x[j] == 0) continue;
            for (const auto& [i, v] : columns_[j]) y[i] += v * x[j];
        }
        return y;
    }

    SparseIntMatrix scaled(const Integer& s) const
    {
        SparseIntMatrix r = *this;
        if (s == 0) return SparseIntMatrix(rows_, cols());
        for (auto& c : r.columns_)
            for (auto& e : c) e.second *= s;
        return r;
    }

    friend bool operator==(const SparseIntMatrix& a, const SparseIntMatrix& b)
    {
        return a.rows_ == b.rows_ && a.columns_ == b.columns_;
    }

    // Sparse product a * b.
    friend SparseIntMatrix operator*(const SparseIntMatrix& a, const SparseIntMatrix& b)
    {
        if (a.cols() != b.rows()) throw InvalidInput("sparse product shape mismatch");
        SparseIntMatrix r(a.rows(), b.cols());
        for (std::size_t j = 0; j < b.cols(); ++j) {
            SparseColumn acc;
            for (const auto& [k, v] : b.columns_[j])
                for (const auto& [i, w] : a.columns_[k]) acc.emplace_back(i, v * w);
            r.set_column(j, std::move(acc));
        }
        return r;
    }

  private:
    std::size_t rows_ = 0;
    std::vector<SparseColumn> columns_;
};

}  // namespace dcft
