#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "boundq/error.hpp"
#include "boundq/exactla/scalar.hpp"

namespace boundq {

using Vector = std::vector<Scalar>;

inline Vector zero_vector(Field f, std::size_t n) { return Vector(n, Scalar::zero(f)); }

inline bool is_zero(std::span<const Scalar> v)
{
    for (const auto& s : v)
        if (!s.is_zero()) return false;
    return true;
}

/// Dense row-major matrix over a single Field.
class Matrix {
public:
    Matrix() = default;
    Matrix(Field f, std::size_t rows, std::size_t cols)
        : field_(f), rows_(rows), cols_(cols), entries_(rows * cols, Scalar::zero(f))
    {}

    static Matrix identity(Field f, std::size_t n)
    {
        Matrix m(f, n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar::one(f);
        return m;
    }

    /// Builds a matrix from rows of equal length; the field is taken from `f`.
    static Matrix from_rows(Field f, const std::vector<Vector>& rows, std::size_t cols)
    {
        Matrix m(f, rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != cols) throw InvalidArgument("ragged rows");
            for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    static Matrix from_ints(Field f, const std::vector<std::vector<long long>>& rows)
    {
        std::size_t cols = rows.empty() ? 0 : rows.front().size();
        Matrix m(f, rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != cols) throw InvalidArgument("ragged rows");
            for (std::size_t j = 0; j < cols; ++j) m(i, j) = Scalar(f, rows[i][j]);
        }
        return m;
    }

    Field field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    Scalar& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const Scalar& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

    std::span<const Scalar> row(std::size_t i) const { return {entries_.data() + i * cols_, cols_}; }
    std::span<Scalar> row(std::size_t i) { return {entries_.data() + i * cols_, cols_}; }
    Vector row_vector(std::size_t i) const { return {row(i).begin(), row(i).end()}; }
    Vector column(std::size_t j) const
    {
        Vector c;
        c.reserve(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c.push_back((*this)(i, j));
        return c;
    }

    const std::vector<Scalar>& entries() const { return entries_; }

    bool is_zero() const { return boundq::is_zero(entries_); }

    /// Throws FieldMismatch if any entry lives in a field other than field().
    void check_field() const
    {
        for (const auto& s : entries_)
            if (!(s.field() == field_)) throw FieldMismatch("matrix over " + field_.name() + " holds entry over " + s.field().name());
    }

    Matrix transpose() const
    {
        Matrix t(field_, cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b)
    {
        if (a.cols_ != b.rows_) throw InvalidArgument("matrix product: shape mismatch");
        if (!(a.field_ == b.field_)) throw FieldMismatch();
        Matrix c(a.field_, a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Scalar& x = a(i, k);
                if (x.is_zero()) continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    if (!b(k, j).is_zero()) c(i, j) += x * b(k, j);
            }
        return c;
    }

    friend Vector operator*(const Matrix& a, std::span<const Scalar> v)
    {
        if (a.cols_ != v.size()) throw InvalidArgument("matrix-vector product: shape mismatch");
        Vector r = zero_vector(a.field_, a.rows_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t j = 0; j < a.cols_; ++j)
                if (!a(i, j).is_zero() && !v[j].is_zero()) r[i] += a(i, j) * v[j];
        return r;
    }

    friend Matrix operator+(Matrix a, const Matrix& b)
    {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw InvalidArgument("matrix sum: shape mismatch");
        for (std::size_t i = 0; i < a.entries_.size(); ++i) a.entries_[i] += b.entries_[i];
        return a;
    }

    friend Matrix operator-(Matrix a, const Matrix& b)
    {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw InvalidArgument("matrix difference: shape mismatch");
        for (std::size_t i = 0; i < a.entries_.size(); ++i) a.entries_[i] -= b.entries_[i];
        return a;
    }

    friend Matrix operator*(const Scalar& s, Matrix a)
    {
        for (auto& e : a.entries_) e *= s;
        return a;
    }

    friend bool operator==(const Matrix& a, const Matrix& b)
    {
        return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
    }

private:
    Field field_{};
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Scalar> entries_;
};

struct RrefResult {
    Matrix reduced;                    ///< zero rows dropped
    std::vector<std::size_t> pivots;   ///< strictly increasing column indices
};

/// Reduced row echelon form by Gauss-Jordan elimination.
inline RrefResult rref(const Matrix& m)
{
    m.check_field();
    Matrix a = m;
    const Field f = a.field();
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        std::size_t p = r;
        while (p < a.rows() && a(p, c).is_zero()) ++p;
        if (p == a.rows()) continue;
        if (p != r)
            for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(p, j), a(r, j));
        Scalar inv = a(r, c).inverse();
        for (std::size_t j = c; j < a.cols(); ++j) a(r, j) *= inv;
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == r || a(i, c).is_zero()) continue;
            Scalar k = a(i, c);
            for (std::size_t j = c; j < a.cols(); ++j)
                if (!a(r, j).is_zero()) a(i, j) -= k * a(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    Matrix reduced(f, r, a.cols());
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) reduced(i, j) = a(i, j);
    return {std::move(reduced), std::move(pivots)};
}

inline std::size_t rank(const Matrix& m) { return rref(m).pivots.size(); }

/// Canonical nullspace basis: one vector per free column, in increasing column
/// order, with that free variable set to 1 and the other free variables to 0.
inline std::vector<Vector> nullspace(const Matrix& m)
{
    auto [red, pivots] = rref(m);
    const Field f = m.field();
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<Vector> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        Vector v = zero_vector(f, m.cols());
        v[free] = Scalar::one(f);
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -red(i, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Row-reduced basis of the span of `vectors` (all of length `dim`).
inline std::vector<Vector> span_basis(Field f, const std::vector<Vector>& vectors, std::size_t dim)
{
    if (vectors.empty()) return {};
    auto red = rref(Matrix::from_rows(f, vectors, dim)).reduced;
    std::vector<Vector> out;
    for (std::size_t i = 0; i < red.rows(); ++i) out.push_back(red.row_vector(i));
    return out;
}

/// Incrementally maintained row-reduced basis of a subspace of F^dim.
/// Supports membership tests and reduction of vectors against the basis.
class Subspace {
public:
    Subspace() = default;
    Subspace(Field f, std::size_t dim) : field_(f), dim_(dim) {}

    Field field() const { return field_; }
    std::size_t ambient_dim() const { return dim_; }
    std::size_t dim() const { return rows_.size(); }
    const std::vector<Vector>& basis() const { return rows_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }

    /// Subtracts basis multiples so every pivot coordinate of v is zero.
    Vector reduce(Vector v) const
    {
        if (v.size() != dim_) throw InvalidArgument("subspace reduce: dimension mismatch");
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            const Scalar c = v[pivots_[i]];
            if (c.is_zero()) continue;
            for (std::size_t j = 0; j < dim_; ++j)
                if (!rows_[i][j].is_zero()) v[j] -= c * rows_[i][j];
        }
        return v;
    }

    bool contains(const Vector& v) const { return boundq::is_zero(reduce(v)); }

    /// Adds v; returns false if v was already in the span.
    bool insert(const Vector& v)
    {
        Vector r = reduce(v);
        std::size_t p = 0;
        while (p < dim_ && r[p].is_zero()) ++p;
        if (p == dim_) return false;
        Scalar inv = r[p].inverse();
        for (auto& x : r) x *= inv;
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            const Scalar c = rows_[i][p];
            if (c.is_zero()) continue;
            for (std::size_t j = 0; j < dim_; ++j)
                if (!r[j].is_zero()) rows_[i][j] -= c * r[j];
        }
        auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), p) - pivots_.begin();
        pivots_.insert(pivots_.begin() + pos, p);
        rows_.insert(rows_.begin() + pos, std::move(r));
        return true;
    }

    bool contains(const Subspace& other) const
    {
        for (const auto& v : other.rows_)
            if (!contains(v)) return false;
        return true;
    }

    friend bool operator==(const Subspace& a, const Subspace& b)
    {
        return a.field_ == b.field_ && a.dim_ == b.dim_ && a.rows_ == b.rows_;
    }

private:
    Field field_{};
    std::size_t dim_ = 0;
    std::vector<Vector> rows_;
    std::vector<std::size_t> pivots_;
};

inline Subspace make_subspace(Field f, std::size_t dim, const std::vector<Vector>& vectors)
{
    Subspace s(f, dim);
    for (const auto& v : vectors) s.insert(v);
    return s;
}

}  // namespace boundq
