#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "segre/common.hpp"

namespace segre {

// Dense exact matrix over a field handle F.  Row-major storage.
template <class F>
class Matrix {
  public:
    using E = typename F::Elem;

    Matrix(const F& f, std::size_t rows, std::size_t cols)
        : field_(f), rows_(rows), cols_(cols), a_(rows * cols, f.zero()) {}

    static Matrix identity(const F& f, std::size_t n) {
        Matrix m(f, n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = f.one();
        return m;
    }

    static Matrix from_rows(const F& f, const std::vector<std::vector<E>>& rows) {
        if (rows.empty()) fail(ErrorKind::EmptyInput, "matrix from empty row list");
        Matrix m(f, rows.size(), rows[0].size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != m.cols_)
                fail(ErrorKind::DimensionMismatch, "ragged row list");
            for (std::size_t j = 0; j < m.cols_; ++j) m.at(i, j) = rows[i][j];
        }
        return m;
    }

    const F& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    E& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const E& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    std::vector<E> row(std::size_t i) const {
        return std::vector<E>(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_);
    }
    std::vector<E> col(std::size_t j) const {
        std::vector<E> c;
        c.reserve(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c.push_back(at(i, j));
        return c;
    }

    friend bool operator==(const Matrix& x, const Matrix& y) {
        return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
    }

    Matrix transpose() const {
        Matrix t(field_, cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    Matrix mul(const Matrix& o) const {
        if (cols_ != o.rows_) fail(ErrorKind::DimensionMismatch, "matrix product shape");
        Matrix r(field_, rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const E& aik = at(i, k);
                if (aik.is_zero()) continue;
                for (std::size_t j = 0; j < o.cols_; ++j)
                    r.at(i, j) = r.at(i, j) + aik * o.at(k, j);
            }
        return r;
    }

    // A * x with x a column vector.
    std::vector<E> apply(const std::vector<E>& x) const {
        if (x.size() != cols_) fail(ErrorKind::DimensionMismatch, "matrix-vector shape");
        std::vector<E> y(rows_, field_.zero());
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if (!at(i, j).is_zero()) y[i] = y[i] + at(i, j) * x[j];
        return y;
    }

    // In-place Gauss-Jordan to the unique reduced row echelon form.
    // Returns pivot column indices; zero rows sink to the bottom.
    std::vector<std::size_t> rref() {
        std::vector<std::size_t> pivots;
        std::size_t r = 0;
        for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
            std::size_t sel = r;
            while (sel < rows_ && at(sel, c).is_zero()) ++sel;
            if (sel == rows_) continue;
            if (sel != r)
                for (std::size_t j = 0; j < cols_; ++j) std::swap(at(sel, j), at(r, j));
            const E inv = at(r, c).inv();
            for (std::size_t j = c; j < cols_; ++j) at(r, j) = at(r, j) * inv;
            for (std::size_t i = 0; i < rows_; ++i) {
                if (i == r || at(i, c).is_zero()) continue;
                const E f = at(i, c);
                for (std::size_t j = c; j < cols_; ++j)
                    at(i, j) = at(i, j) - f * at(r, j);
            }
            pivots.push_back(c);
            ++r;
        }
        return pivots;
    }

    std::size_t rank() const {
        Matrix copy = *this;
        return copy.rref().size();
    }

    // Rows spanning the null space {x : A x = 0}; canonical order by free column.
    Matrix kernel() const {
        Matrix red = *this;
        std::vector<std::size_t> pivots = red.rref();
        std::vector<bool> is_pivot(cols_, false);
        for (auto p : pivots) is_pivot[p] = true;
        std::vector<std::size_t> free_cols;
        for (std::size_t c = 0; c < cols_; ++c)
            if (!is_pivot[c]) free_cols.push_back(c);
        Matrix k(field_, free_cols.size(), cols_);
        for (std::size_t fi = 0; fi < free_cols.size(); ++fi) {
            const std::size_t fc = free_cols[fi];
            k.at(fi, fc) = field_.one();
            for (std::size_t r = 0; r < pivots.size(); ++r)
                k.at(fi, pivots[r]) = -red.at(r, fc);
        }
        return k;
    }

    Matrix inverse() const {
        if (rows_ != cols_) fail(ErrorKind::DimensionMismatch, "inverse of non-square matrix");
        Matrix aug(field_, rows_, 2 * cols_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
            aug.at(i, cols_ + i) = field_.one();
        }
        auto pivots = aug.rref();
        if (pivots.size() != rows_ || pivots.back() >= cols_)
            fail(ErrorKind::SingularMatrix, "matrix is singular");
        Matrix inv(field_, rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) inv.at(i, j) = aug.at(i, cols_ + j);
        return inv;
    }

    // Kronecker product with row-major flattening: (A kron B)[i1*rB+i2, j1*cB+j2]
    // = A[i1,j1] * B[i2,j2].  Folding left over the factors makes the last
    // factor's index vary fastest, matching the coordinate flattening.
    Matrix kron(const Matrix& b) const {
        Matrix r(field_, rows_ * b.rows_, cols_ * b.cols_);
        for (std::size_t i1 = 0; i1 < rows_; ++i1)
            for (std::size_t j1 = 0; j1 < cols_; ++j1) {
                const E& v = at(i1, j1);
                if (v.is_zero()) continue;
                for (std::size_t i2 = 0; i2 < b.rows_; ++i2)
                    for (std::size_t j2 = 0; j2 < b.cols_; ++j2)
                        r.at(i1 * b.rows_ + i2, j1 * b.cols_ + j2) = v * b.at(i2, j2);
            }
        return r;
    }

    // Unique x with A x = b, if any; nullopt when inconsistent or
    // underdetermined solutions are requested from a rank-deficient system.
    std::optional<std::vector<E>> solve(const std::vector<E>& b) const {
        if (b.size() != rows_) fail(ErrorKind::DimensionMismatch, "solve rhs shape");
        Matrix aug(field_, rows_, cols_ + 1);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
            aug.at(i, cols_) = b[i];
        }
        auto pivots = aug.rref();
        if (!pivots.empty() && pivots.back() == cols_) return std::nullopt;  // inconsistent
        if (pivots.size() != cols_) return std::nullopt;                     // not unique
        std::vector<E> x(cols_, field_.zero());
        for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug.at(r, cols_);
        return x;
    }

  private:
    F field_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<E> a_;
};

template <class F>
typename F::Elem dot(const F& f, const std::vector<typename F::Elem>& a,
                     const std::vector<typename F::Elem>& b) {
    if (a.size() != b.size()) fail(ErrorKind::DimensionMismatch, "dot product shape");
    auto s = f.zero();
    for (std::size_t i = 0; i < a.size(); ++i) s = s + a[i] * b[i];
    return s;
}

template <class F>
bool is_zero_vector(const std::vector<typename F::Elem>& v) {
    for (const auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

}  // namespace segre
