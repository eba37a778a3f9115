#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "bsforge/error.hpp"

namespace bsforge {

/// Dense row-major matrix over an exact field C (Rat or FieldElem).
template <class C>
class Mat {
public:
    Mat() = default;
    Mat(std::size_t rows, std::size_t cols, const C& fill = C(0))
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Mat identity(std::size_t n, const C& one = C(1)) {
        Mat m(n, n, one - one);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = one;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    C& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const C& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    const std::vector<C>& data() const { return data_; }

    std::vector<C> row(std::size_t r) const {
        return std::vector<C>(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                              data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
    }

    template <class F>
    auto map(F&& f) const {
        using D = decltype(f(std::declval<const C&>()));
        Mat<D> out;
        out.rows_ = rows_;
        out.cols_ = cols_;
        out.data_.reserve(data_.size());
        for (const C& x : data_) out.data_.push_back(f(x));
        return out;
    }

    friend Mat operator*(const Mat& a, const Mat& b) {
        if (a.cols_ != b.rows_) fail_input("DimensionMismatch", "matrix product shape mismatch");
        Mat out(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const C& x = a(i, k);
                if (x.is_zero()) continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    if (!b(k, j).is_zero()) out(i, j) += x * b(k, j);
            }
        return out;
    }

    friend std::vector<C> operator*(const Mat& a, const std::vector<C>& v) {
        if (a.cols_ != v.size()) fail_input("DimensionMismatch", "matrix-vector shape mismatch");
        std::vector<C> out(a.rows_, C(0));
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k)
                if (!a(i, k).is_zero()) out[i] += a(i, k) * v[k];
        return out;
    }

    friend Mat operator+(const Mat& a, const Mat& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) fail_input("DimensionMismatch", "matrix sum shape mismatch");
        Mat out = a;
        for (std::size_t i = 0; i < a.data_.size(); ++i) out.data_[i] += b.data_[i];
        return out;
    }

    friend Mat operator*(const C& s, const Mat& a) {
        Mat out = a;
        for (C& x : out.data_) x = s * x;
        return out;
    }

    friend bool operator==(const Mat& a, const Mat& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    Mat pow(unsigned e) const {
        Mat out = identity(rows_), base = *this;
        while (e) {
            if (e & 1U) out = out * base;
            base = base * base;
            e >>= 1U;
        }
        return out;
    }

private:
    template <class D>
    friend class Mat;

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<C> data_;
};

/// Determinant by Gaussian elimination (exact field arithmetic).
template <class C>
C determinant(Mat<C> m) {
    if (m.rows() != m.cols()) fail_input("DimensionMismatch", "determinant of a non-square matrix");
    std::size_t n = m.rows();
    C det(1);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && m(piv, col).is_zero()) ++piv;
        if (piv == n) return C(0);
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(piv, j), m(col, j));
            det = -det;
        }
        det *= m(col, col);
        C inv = m(col, col).inverse();
        for (std::size_t r = col + 1; r < n; ++r) {
            if (m(r, col).is_zero()) continue;
            C f = m(r, col) * inv;
            for (std::size_t j = col; j < n; ++j) m(r, j) -= f * m(col, j);
        }
    }
    return det;
}

/// Gauss-Jordan on [A | B]; returns X with A X = B, or nothing if A is singular.
template <class C>
std::optional<Mat<C>> try_solve(Mat<C> a, Mat<C> b) {
    if (a.rows() != a.cols() || b.rows() != a.rows()) fail_input("DimensionMismatch", "solve shape mismatch");
    std::size_t n = a.rows();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a(piv, col).is_zero()) ++piv;
        if (piv == n) return std::nullopt;
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(piv, j), a(col, j));
            for (std::size_t j = 0; j < b.cols(); ++j) std::swap(b(piv, j), b(col, j));
        }
        C inv = a(col, col).inverse();
        for (std::size_t j = 0; j < n; ++j) a(col, j) *= inv;
        for (std::size_t j = 0; j < b.cols(); ++j) b(col, j) *= inv;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || a(r, col).is_zero()) continue;
            C f = a(r, col);
            for (std::size_t j = 0; j < n; ++j) a(r, j) -= f * a(col, j);
            for (std::size_t j = 0; j < b.cols(); ++j) b(r, j) -= f * b(col, j);
        }
    }
    return b;
}

template <class C>
Mat<C> inverse(const Mat<C>& a) {
    auto x = try_solve(a, Mat<C>::identity(a.rows()));
    if (!x) fail_compute("SingularMatrix", "matrix is singular");
    return *x;
}

/// Rank over the coefficient field.
template <class C>
std::size_t rank(Mat<C> m) {
    std::size_t r = 0;
    for (std::size_t col = 0; col < m.cols() && r < m.rows(); ++col) {
        std::size_t piv = r;
        while (piv < m.rows() && m(piv, col).is_zero()) ++piv;
        if (piv == m.rows()) continue;
        for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(r, j));
        C inv = m(r, col).inverse();
        for (std::size_t i = r + 1; i < m.rows(); ++i) {
            if (m(i, col).is_zero()) continue;
            C f = m(i, col) * inv;
            for (std::size_t j = col; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
        }
        ++r;
    }
    return r;
}

/// Basis of the right kernel {x : M x = 0}, one vector per free column.
template <class C>
std::vector<std::vector<C>> nullspace(Mat<C> m) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t col = 0; col < m.cols() && r < m.rows(); ++col) {
        std::size_t piv = r;
        while (piv < m.rows() && m(piv, col).is_zero()) ++piv;
        if (piv == m.rows()) continue;
        for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(r, j));
        C inv = m(r, col).inverse();
        for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, col).is_zero()) continue;
            C f = m(i, col);
            for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
        }
        pivots.push_back(col);
        ++r;
    }
    std::vector<std::vector<C>> basis;
    std::size_t pi = 0;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (pi < pivots.size() && pivots[pi] == free) {
            ++pi;
            continue;
        }
        std::vector<C> v(m.cols(), C(0));
        v[free] = C(1);
        for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -m(k, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace bsforge
