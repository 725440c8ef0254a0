#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "boundq/error.hpp"
#include "boundq/exactla/scalar.hpp"

namespace boundq {

/// Dense matrix of arbitrary-precision integers.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}

    static IntMatrix identity(std::size_t n)
    {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    static IntMatrix from_rows(const std::vector<std::vector<long long>>& rows)
    {
        std::size_t cols = rows.empty() ? 0 : rows.front().size();
        IntMatrix m(rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != cols) throw InvalidArgument("ragged rows");
            for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    BigInt& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const BigInt& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b)
    {
        if (a.cols_ != b.rows_) throw InvalidArgument("integer matrix product: shape mismatch");
        IntMatrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                if (a(i, k) == 0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
            }
        return c;
    }

    friend bool operator==(const IntMatrix& a, const IntMatrix& b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
    }

    void swap_rows(std::size_t a, std::size_t b)
    {
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
    }
    void swap_cols(std::size_t a, std::size_t b)
    {
        for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
    }
    /// row[dst] += k * row[src]
    void add_row(std::size_t dst, std::size_t src, const BigInt& k)
    {
        for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += k * (*this)(src, j);
    }
    /// col[dst] += k * col[src]
    void add_col(std::size_t dst, std::size_t src, const BigInt& k)
    {
        for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += k * (*this)(i, src);
    }
    void negate_row(std::size_t r)
    {
        for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = -(*this)(r, j);
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<BigInt> entries_;
};

/// Determinant by fraction-free (Bareiss) elimination.
inline BigInt determinant(IntMatrix m)
{
    if (m.rows() != m.cols()) throw InvalidArgument("determinant of non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    BigInt sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && m(p, k) == 0) ++p;
            if (p == n) return 0;
            m.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

struct SmithResult {
    /// Nonzero invariant factors d_1 | d_2 | ... (all positive). Their count is the rank.
    std::vector<BigInt> factors;
    IntMatrix u;  ///< rows x rows, unimodular
    IntMatrix v;  ///< cols x cols, unimodular
    IntMatrix diagonal;  ///< u * m * v
};

/// Smith normal form with transformation matrices: u * m * v is diagonal with
/// d_1 | d_2 | ... on the leading diagonal and zeros elsewhere.
inline SmithResult smith_normal_form(const IntMatrix& m)
{
    const std::size_t R = m.rows(), C = m.cols();
    IntMatrix a = m;
    IntMatrix u = IntMatrix::identity(R);
    IntMatrix v = IntMatrix::identity(C);

    auto floor_div = [](const BigInt& x, const BigInt& y) {
        BigInt q = x / y;
        if ((x % y != 0) && ((x < 0) != (y < 0))) q -= 1;
        return q;
    };

    std::size_t t = 0;
    for (; t < R && t < C; ++t) {
        // pivot: smallest nonzero |entry| in the trailing block
        bool found = false;
        std::size_t pi = t, pj = t;
        BigInt best;
        for (std::size_t i = t; i < R; ++i)
            for (std::size_t j = t; j < C; ++j)
                if (a(i, j) != 0 && (!found || abs(a(i, j)) < best)) {
                    found = true;
                    best = abs(a(i, j));
                    pi = i;
                    pj = j;
                }
        if (!found) break;
        a.swap_rows(t, pi);
        u.swap_rows(t, pi);
        a.swap_cols(t, pj);
        v.swap_cols(t, pj);

        for (;;) {
            bool dirty = false;
            for (std::size_t i = t + 1; i < R; ++i) {
                if (a(i, t) == 0) continue;
                BigInt q = floor_div(a(i, t), a(t, t));
                a.add_row(i, t, -q);
                u.add_row(i, t, -q);
                if (a(i, t) != 0) {
                    a.swap_rows(t, i);
                    u.swap_rows(t, i);
                    dirty = true;
                }
            }
            for (std::size_t j = t + 1; j < C; ++j) {
                if (a(t, j) == 0) continue;
                BigInt q = floor_div(a(t, j), a(t, t));
                a.add_col(j, t, -q);
                v.add_col(j, t, -q);
                if (a(t, j) != 0) {
                    a.swap_cols(t, j);
                    v.swap_cols(t, j);
                    dirty = true;
                }
            }
            if (dirty) continue;
            // divisibility of the trailing block by the pivot
            bool fixed = false;
            for (std::size_t i = t + 1; i < R && !fixed; ++i)
                for (std::size_t j = t + 1; j < C && !fixed; ++j)
                    if (a(i, j) % a(t, t) != 0) {
                        a.add_row(t, i, 1);
                        u.add_row(t, i, 1);
                        fixed = true;
                    }
            if (!fixed) break;
        }
        if (a(t, t) < 0) {
            a.negate_row(t);
            u.negate_row(t);
        }
    }

    SmithResult res;
    for (std::size_t i = 0; i < t; ++i) res.factors.push_back(a(i, i));
    res.u = std::move(u);
    res.v = std::move(v);
    res.diagonal = std::move(a);
    return res;
}

}  // namespace boundq
