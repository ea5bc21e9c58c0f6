#pragma once

#include <optional>
#include <string>
#include <vector>

#include <hsjet/scalar.hpp>

namespace hsjet {

/// Dense exact matrix over a Scalar field.
struct Matrix {
    size_t rows = 0, cols = 0;
    FieldPtr field;
    std::vector<Scalar> a; // row-major

    Matrix() = default;
    Matrix(FieldPtr f, size_t r, size_t c)
        : rows(r), cols(c), field(std::move(f)), a(r * c, Scalar::zero(field)) {}

    static Matrix identity(const FieldPtr& f, size_t n) {
        Matrix m(f, n, n);
        for (size_t i = 0; i < n; ++i) m.at(i, i) = Scalar::one_of(f);
        return m;
    }

    Scalar& at(size_t i, size_t j) { return a[i * cols + j]; }
    const Scalar& at(size_t i, size_t j) const { return a[i * cols + j]; }

    Matrix operator*(const Matrix& o) const {
        if (cols != o.rows) throw hs_error("matrix shape mismatch");
        Matrix r(field, rows, o.cols);
        for (size_t i = 0; i < rows; ++i)
            for (size_t k = 0; k < cols; ++k) {
                if (at(i, k).is_zero()) continue;
                for (size_t j = 0; j < o.cols; ++j)
                    r.at(i, j) = r.at(i, j) + at(i, k) * o.at(k, j);
            }
        return r;
    }

    Matrix operator-(const Matrix& o) const {
        Matrix r = *this;
        for (size_t i = 0; i < a.size(); ++i) r.a[i] = r.a[i] - o.a[i];
        return r;
    }

    bool operator==(const Matrix& o) const {
        return rows == o.rows && cols == o.cols && a == o.a;
    }
    bool operator!=(const Matrix& o) const { return !(*this == o); }

    bool is_zero() const {
        for (auto& x : a)
            if (!x.is_zero()) return false;
        return true;
    }

    Matrix transpose() const {
        Matrix r(field, cols, rows);
        for (size_t i = 0; i < rows; ++i)
            for (size_t j = 0; j < cols; ++j) r.at(j, i) = at(i, j);
        return r;
    }

    std::vector<Scalar> row(size_t i) const {
        return std::vector<Scalar>(a.begin() + static_cast<long>(i * cols),
                                   a.begin() + static_cast<long>((i + 1) * cols));
    }

    std::vector<Scalar> apply(const std::vector<Scalar>& v) const {
        if (v.size() != cols) throw hs_error("matrix/vector shape mismatch");
        std::vector<Scalar> r(rows, Scalar::zero(field));
        for (size_t i = 0; i < rows; ++i)
            for (size_t j = 0; j < cols; ++j)
                if (!at(i, j).is_zero()) r[i] = r[i] + at(i, j) * v[j];
        return r;
    }

    /// Kronecker product with *this as the outer (major) factor.
    static Matrix kron(const Matrix& outer, const Matrix& inner) {
        Matrix r(outer.field, outer.rows * inner.rows, outer.cols * inner.cols);
        for (size_t i = 0; i < outer.rows; ++i)
            for (size_t j = 0; j < outer.cols; ++j) {
                if (outer.at(i, j).is_zero()) continue;
                for (size_t k = 0; k < inner.rows; ++k)
                    for (size_t l = 0; l < inner.cols; ++l)
                        r.at(i * inner.rows + k, j * inner.cols + l) =
                            outer.at(i, j) * inner.at(k, l);
            }
        return r;
    }

    std::string str() const {
        std::string out;
        for (size_t i = 0; i < rows; ++i) {
            for (size_t j = 0; j < cols; ++j) {
                if (j) out += " ";
                out += at(i, j).str();
            }
            out += "\n";
        }
        return out;
    }
};

/// Row-reduce in place; returns pivot column indices.  Deterministic: first
/// nonzero entry scanning rows top-down per column.
inline std::vector<size_t> rref_inplace(Matrix& m) {
    std::vector<size_t> pivots;
    size_t r = 0;
    for (size_t c = 0; c < m.cols && r < m.rows; ++c) {
        size_t sel = r;
        while (sel < m.rows && m.at(sel, c).is_zero()) ++sel;
        if (sel == m.rows) continue;
        if (sel != r)
            for (size_t j = 0; j < m.cols; ++j) std::swap(m.at(sel, j), m.at(r, j));
        Scalar inv = m.at(r, c).inv();
        for (size_t j = c; j < m.cols; ++j) m.at(r, j) = m.at(r, j) * inv;
        for (size_t i = 0; i < m.rows; ++i) {
            if (i == r || m.at(i, c).is_zero()) continue;
            Scalar f = m.at(i, c);
            for (size_t j = c; j < m.cols; ++j) m.at(i, j) = m.at(i, j) - f * m.at(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

inline size_t rank(Matrix m) { return rref_inplace(m).size(); }

/// Basis of the right kernel, echelon-deterministic given the column order.
inline std::vector<std::vector<Scalar>> kernel_basis(Matrix m) {
    std::vector<size_t> pivots = rref_inplace(m);
    std::vector<bool> is_pivot(m.cols, false);
    std::vector<size_t> pivot_row(m.cols, 0);
    for (size_t k = 0; k < pivots.size(); ++k) {
        is_pivot[pivots[k]] = true;
        pivot_row[pivots[k]] = k;
    }
    std::vector<std::vector<Scalar>> out;
    for (size_t c = 0; c < m.cols; ++c) {
        if (is_pivot[c]) continue;
        std::vector<Scalar> v(m.cols, Scalar::zero(m.field));
        v[c] = Scalar::one_of(m.field);
        for (size_t p = 0; p < m.cols; ++p)
            if (is_pivot[p]) v[p] = -m.at(pivot_row[p], c);
        out.push_back(std::move(v));
    }
    return out;
}

/// One solution of A x = b, if any.
inline std::optional<std::vector<Scalar>> solve(const Matrix& A, const std::vector<Scalar>& b) {
    if (b.size() != A.rows) throw hs_error("solve: shape mismatch");
    Matrix m(A.field, A.rows, A.cols + 1);
    for (size_t i = 0; i < A.rows; ++i) {
        for (size_t j = 0; j < A.cols; ++j) m.at(i, j) = A.at(i, j);
        m.at(i, A.cols) = b[i];
    }
    std::vector<size_t> pivots = rref_inplace(m);
    for (size_t p : pivots)
        if (p == A.cols) return std::nullopt; // inconsistent
    std::vector<Scalar> x(A.cols, Scalar::zero(A.field));
    for (size_t k = 0; k < pivots.size(); ++k) x[pivots[k]] = m.at(k, A.cols);
    return x;
}

inline Matrix inverse(const Matrix& A) {
    if (A.rows != A.cols) throw hs_error("inverse of non-square matrix");
    Matrix m(A.field, A.rows, 2 * A.cols);
    for (size_t i = 0; i < A.rows; ++i) {
        for (size_t j = 0; j < A.cols; ++j) m.at(i, j) = A.at(i, j);
        m.at(i, A.cols + i) = Scalar::one_of(A.field);
    }
    std::vector<size_t> pivots = rref_inplace(m);
    if (pivots.size() != A.rows || pivots.back() != A.rows - 1)
        throw hs_error("matrix is singular");
    Matrix r(A.field, A.rows, A.cols);
    for (size_t i = 0; i < A.rows; ++i)
        for (size_t j = 0; j < A.cols; ++j) r.at(i, j) = m.at(i, A.cols + j);
    return r;
}

/// Matrix whose rows are the given vectors.
inline Matrix from_rows(const FieldPtr& f, const std::vector<std::vector<Scalar>>& rows,
                        size_t cols) {
    Matrix m(f, rows.size(), cols);
    for (size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw hs_error("row length mismatch");
        for (size_t j = 0; j < cols; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

/// Canonical basis of a row space (nonzero RREF rows).
inline Matrix row_space_basis(Matrix m) {
    size_t r = rref_inplace(m).size();
    Matrix out(m.field, r, m.cols);
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < m.cols; ++j) out.at(i, j) = m.at(i, j);
    return out;
}

inline bool row_space_contains(const Matrix& basis, const std::vector<Scalar>& v) {
    Matrix m(basis.field, basis.rows + 1, basis.cols);
    for (size_t i = 0; i < basis.rows; ++i)
        for (size_t j = 0; j < basis.cols; ++j) m.at(i, j) = basis.at(i, j);
    for (size_t j = 0; j < basis.cols; ++j) m.at(basis.rows, j) = v[j];
    return rank(m) == rank(basis);
}

inline bool row_space_leq(const Matrix& A, const Matrix& B) {
    if (A.cols != B.cols) throw hs_error("subspace ambient mismatch");
    Matrix m(A.field, A.rows + B.rows, A.cols);
    for (size_t i = 0; i < B.rows; ++i)
        for (size_t j = 0; j < B.cols; ++j) m.at(i, j) = B.at(i, j);
    for (size_t i = 0; i < A.rows; ++i)
        for (size_t j = 0; j < A.cols; ++j) m.at(B.rows + i, j) = A.at(i, j);
    return rank(m) == rank(B);
}

inline bool row_space_equal(const Matrix& A, const Matrix& B) {
    return row_space_leq(A, B) && row_space_leq(B, A);
}

/// An exact linear system with monomial / basis-element labels.
struct LinearSystem {
    Matrix m;
    std::vector<std::string> row_labels;
    std::vector<std::string> col_labels;
};

inline std::vector<std::vector<Scalar>> kernel_basis(const LinearSystem& sys) {
    return kernel_basis(sys.m);
}

} // namespace hsjet
