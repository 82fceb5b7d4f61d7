#pragma once
#include "tensorank/scalar.hpp"

#include <cstdint>
#include <vector>

namespace tensorank {

template <class S>
struct Mat {
    int rows = 0, cols = 0;
    std::vector<S> a;

    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}
    S& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    const S& operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = S(1);
        return m;
    }
    Mat transposed() const {
        Mat t(cols, rows);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
        return t;
    }
    friend Mat operator+(const Mat& x, const Mat& y) {
        Mat r(x.rows, x.cols);
        for (size_t k = 0; k < x.a.size(); ++k) r.a[k] = x.a[k] + y.a[k];
        return r;
    }
    friend Mat operator*(const S& c, const Mat& x) {
        Mat r = x;
        for (auto& v : r.a) v = c * v;
        return r;
    }
    friend Mat operator*(const Mat& x, const Mat& y) {
        Mat r(x.rows, y.cols);
        for (int i = 0; i < x.rows; ++i)
            for (int k = 0; k < x.cols; ++k) {
                if (scalar_is_zero(x(i, k))) continue;
                for (int j = 0; j < y.cols; ++j) r(i, j) += x(i, k) * y(k, j);
            }
        return r;
    }
    friend bool operator==(const Mat& x, const Mat& y) {
        return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
    }
};

using QMat = Mat<GaussianRational>;

// exact rank by Gaussian elimination over the Gaussian rationals
inline int exact_rank(QMat m) {
    int r = 0;
    for (int c = 0; c < m.cols && r < m.rows; ++c) {
        int piv = -1;
        for (int i = r; i < m.rows; ++i)
            if (!m(i, c).is_zero()) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != r)
            for (int j = c; j < m.cols; ++j) std::swap(m(r, j), m(piv, j));
        GaussianRational inv = GaussianRational(1) / m(r, c);
        for (int i = r + 1; i < m.rows; ++i) {
            if (m(i, c).is_zero()) continue;
            GaussianRational f = m(i, c) * inv;
            for (int j = c; j < m.cols; ++j) m(i, j) -= f * m(r, j);
        }
        ++r;
    }
    return r;
}

// exact determinant (square), elimination with pivot product
inline GaussianRational exact_det(QMat m) {
    if (m.rows != m.cols) throw std::invalid_argument("exact_det: square matrices only");
    GaussianRational det(1);
    for (int c = 0; c < m.cols; ++c) {
        int piv = -1;
        for (int i = c; i < m.rows; ++i)
            if (!m(i, c).is_zero()) { piv = i; break; }
        if (piv < 0) return GaussianRational(0);
        if (piv != c) {
            for (int j = c; j < m.cols; ++j) std::swap(m(c, j), m(piv, j));
            det = -det;
        }
        det *= m(c, c);
        GaussianRational inv = GaussianRational(1) / m(c, c);
        for (int i = c + 1; i < m.rows; ++i) {
            if (m(i, c).is_zero()) continue;
            GaussianRational f = m(i, c) * inv;
            for (int j = c; j < m.cols; ++j) m(i, j) -= f * m(c, j);
        }
    }
    return det;
}

// kernel basis (columns x with Mx = 0), exact
inline std::vector<std::vector<GaussianRational>> exact_kernel(QMat m) {
    int rows = m.rows, cols = m.cols;
    std::vector<int> pivot_col;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int piv = -1;
        for (int i = r; i < rows; ++i)
            if (!m(i, c).is_zero()) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != r)
            for (int j = 0; j < cols; ++j) std::swap(m(r, j), m(piv, j));
        GaussianRational inv = GaussianRational(1) / m(r, c);
        for (int j = 0; j < cols; ++j) m(r, j) *= inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r || m(i, c).is_zero()) continue;
            GaussianRational f = m(i, c);
            for (int j = 0; j < cols; ++j) m(i, j) -= f * m(r, j);
        }
        pivot_col.push_back(c);
        ++r;
    }
    std::vector<bool> is_pivot(cols, false);
    for (int c : pivot_col) is_pivot[c] = true;
    std::vector<std::vector<GaussianRational>> basis;
    for (int c = 0; c < cols; ++c) {
        if (is_pivot[c]) continue;
        std::vector<GaussianRational> v(cols);
        v[c] = GaussianRational(1);
        for (int i = 0; i < r; ++i) v[pivot_col[i]] = -m(i, c);
        basis.push_back(std::move(v));
    }
    return basis;
}

// numeric rank: singular values above tol * sigma_max (implemented in numeric.cpp via Eigen)
int numeric_rank(const Mat<Complex>& m, double tol = 1e-9);
std::vector<double> singular_values(const Mat<Complex>& m);
double sigma_max(const Mat<Complex>& m);
double trace_norm(const Mat<Complex>& m); // sum of singular values

} // namespace tensorank
