#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "rankone/exact/rational.hpp"

namespace rankone {

using Vector = std::vector<Rational>;

inline Vector unit_vector(std::size_t n, std::size_t i) {
    Vector v(n);
    v.at(i) = 1;
    return v;
}

inline Rational dot(const Vector& a, const Vector& b) {
    if (a.size() != b.size())
        throw dimension_error("dot: vectors of dimension " + std::to_string(a.size()) + " and " +
                              std::to_string(b.size()));
    Rational s;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!a[i].is_zero() && !b[i].is_zero()) s += a[i] * b[i];
    return s;
}

/// Dense row-major matrix over the rationals.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    Matrix(std::initializer_list<std::initializer_list<Rational>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_) throw dimension_error("ragged matrix literal");
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }
    static Matrix from_rows(const std::vector<Vector>& rows) {
        Matrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != m.cols_) throw dimension_error("ragged matrix rows");
            for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }
    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }
    static Matrix outer(const Vector& a, const Vector& b) {
        Matrix m(a.size(), b.size());
        for (std::size_t i = 0; i < a.size(); ++i)
            if (!a[i].is_zero())
                for (std::size_t j = 0; j < b.size(); ++j) m(i, j) = a[i] * b[j];
        return m;
    }

    [[nodiscard]] std::size_t rows() const { return rows_; }
    [[nodiscard]] std::size_t cols() const { return cols_; }
    [[nodiscard]] bool is_square() const { return rows_ == cols_; }

    Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    Rational& at(std::size_t i, std::size_t j) {
        check(i, j);
        return (*this)(i, j);
    }
    [[nodiscard]] const Rational& at(std::size_t i, std::size_t j) const {
        check(i, j);
        return (*this)(i, j);
    }

    [[nodiscard]] Vector row(std::size_t i) const {
        return Vector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                      data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
    }
    [[nodiscard]] Vector col(std::size_t j) const {
        Vector v(rows_);
        for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
        return v;
    }

    [[nodiscard]] Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }
    [[nodiscard]] Rational trace() const {
        require_square("trace");
        Rational s;
        for (std::size_t i = 0; i < rows_; ++i) s += (*this)(i, i);
        return s;
    }
    [[nodiscard]] bool is_zero() const {
        for (const auto& x : data_)
            if (!x.is_zero()) return false;
        return true;
    }
    /// Submatrix on the given row and column index lists.
    [[nodiscard]] Matrix select(const std::vector<std::size_t>& rs, const std::vector<std::size_t>& cs) const {
        Matrix s(rs.size(), cs.size());
        for (std::size_t i = 0; i < rs.size(); ++i)
            for (std::size_t j = 0; j < cs.size(); ++j) s(i, j) = at(rs[i], cs[j]);
        return s;
    }

    Matrix& operator+=(const Matrix& o) {
        same_shape(o, "addition");
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
        return *this;
    }
    Matrix& operator-=(const Matrix& o) {
        same_shape(o, "subtraction");
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
        return *this;
    }
    Matrix& operator*=(const Rational& s) {
        for (auto& x : data_) x *= s;
        return *this;
    }
    /// this += s * o, the common accumulation step.
    Matrix& add_scaled(const Matrix& o, const Rational& s) {
        same_shape(o, "addition");
        if (s.is_zero()) return *this;
        for (std::size_t i = 0; i < data_.size(); ++i)
            if (!o.data_[i].is_zero()) data_[i] += s * o.data_[i];
        return *this;
    }

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(Matrix a, const Rational& s) { return a *= s; }
    friend Matrix operator*(const Rational& s, Matrix a) { return a *= s; }
    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_)
            throw dimension_error("product of " + a.shape() + " and " + b.shape() + " matrices");
        Matrix p(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t t = 0; t < a.cols_; ++t) {
                const Rational& x = a(i, t);
                if (x.is_zero()) continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    if (!b(t, j).is_zero()) p(i, j) += x * b(t, j);
            }
        return p;
    }
    friend Vector operator*(const Matrix& a, const Vector& v) {
        if (a.cols_ != v.size()) throw dimension_error("matrix-vector product: " + a.shape());
        Vector r(a.rows_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t j = 0; j < a.cols_; ++j)
                if (!a(i, j).is_zero() && !v[j].is_zero()) r[i] += a(i, j) * v[j];
        return r;
    }
    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    [[nodiscard]] std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

    void require_square(const char* what) const {
        if (!is_square()) throw dimension_error(std::string(what) + " needs a square matrix, got " + shape());
    }

private:
    void check(std::size_t i, std::size_t j) const {
        if (i >= rows_ || j >= cols_)
            throw dimension_error("index (" + std::to_string(i) + "," + std::to_string(j) + ") outside " + shape());
    }
    void same_shape(const Matrix& o, const char* what) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw dimension_error(std::string("matrix ") + what + " of " + shape() + " and " + o.shape());
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

/// Exact determinant.
///
/// Rows are scaled to integers, then eliminated with the fraction-free
/// Bareiss recurrence (every division is exact) with row-swap pivoting.
inline Rational det(const Matrix& m) {
    m.require_square("det");
    const std::size_t n = m.rows();
    if (n == 0) return Rational(1);
    std::vector<mpz_class> a(n * n);
    mpq_class scale = 1;
    for (std::size_t i = 0; i < n; ++i) {
        mpz_class l = 1;
        for (std::size_t j = 0; j < n; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).raw().get_den_mpz_t());
        scale *= l;
        for (std::size_t j = 0; j < n; ++j) {
            const mpq_class& q = m(i, j).raw();
            a[i * n + j] = q.get_num() * (l / q.get_den());
        }
    }
    int sign = 1;
    mpz_class prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k * n + k] == 0) {
            std::size_t p = k + 1;
            while (p < n && a[p * n + k] == 0) ++p;
            if (p == n) return Rational(0);
            for (std::size_t j = 0; j < n; ++j) std::swap(a[k * n + j], a[p * n + j]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                mpz_class& x = a[i * n + j];
                x = x * a[k * n + k] - a[i * n + k] * a[k * n + j];
                mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), prev.get_mpz_t());
            }
            a[i * n + k] = 0;
        }
        prev = a[k * n + k];
    }
    mpq_class d(a[n * n - 1]);
    d /= scale;
    if (sign < 0) d = -d;
    return Rational(d);
}

/// Reduced row echelon form; returns the pivot columns.
inline std::vector<std::size_t> rref(Matrix& m) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && m(p, c).is_zero()) ++p;
        if (p == m.rows()) continue;
        if (p != r)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
        const Rational inv = m(r, c).inverse();
        for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c).is_zero()) continue;
            const Rational f = m(i, c);
            for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

inline std::size_t rank(Matrix m) { return rref(m).size(); }

/// Basis of {x : m x = 0}.
inline std::vector<Vector> nullspace(Matrix m) {
    const auto pivots = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<Vector> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        Vector v(m.cols());
        v[free] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m(r, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Gram matrix G[i][j] = <left_i, right_j> for the standard scalar product.
inline Matrix gram(const std::vector<Vector>& left, const std::vector<Vector>& right) {
    const std::size_t dim = !left.empty() ? left.front().size() : (!right.empty() ? right.front().size() : 0);
    for (const auto* family : {&left, &right})
        for (const auto& v : *family)
            if (v.size() != dim) throw dimension_error("gram: vectors of mixed ambient dimension");
    Matrix g(left.size(), right.size());
    for (std::size_t i = 0; i < left.size(); ++i)
        for (std::size_t j = 0; j < right.size(); ++j) g(i, j) = dot(left[i], right[j]);
    return g;
}

}  // namespace rankone
