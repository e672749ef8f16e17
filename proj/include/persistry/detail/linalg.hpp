#pragma once

// Small dense linear algebra on row-major std::vector<double>. Sizes here are
// at most a few dozen, so plain Gaussian elimination is enough.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace persistry::detail {

inline double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
    return s;
}

inline double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}
    double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

/// In-place reduced row echelon form with partial pivoting. Entries with
/// magnitude <= tol are treated as zero. Returns the pivot column of each
/// pivot row.
inline std::vector<std::size_t> rref(Matrix& m, double tol) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols && row < m.rows; ++col) {
        std::size_t best = row;
        for (std::size_t r = row + 1; r < m.rows; ++r)
            if (std::abs(m(r, col)) > std::abs(m(best, col))) best = r;
        if (std::abs(m(best, col)) <= tol) continue;
        for (std::size_t c = 0; c < m.cols; ++c) std::swap(m(row, c), m(best, c));
        const double inv = 1.0 / m(row, col);
        for (std::size_t c = 0; c < m.cols; ++c) m(row, c) *= inv;
        for (std::size_t r = 0; r < m.rows; ++r) {
            if (r == row || m(r, col) == 0.0) continue;
            const double f = m(r, col);
            for (std::size_t c = 0; c < m.cols; ++c) m(r, c) -= f * m(row, c);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

inline std::size_t rank(Matrix m, double tol) { return rref(m, tol).size(); }

/// A unit vector spanning the null space when it is exactly one-dimensional.
inline std::optional<std::vector<double>> null_vector(Matrix m, double tol) {
    const auto pivots = rref(m, tol);
    if (pivots.size() + 1 != m.cols) return std::nullopt;
    std::size_t free_col = 0;
    for (std::size_t c = 0, p = 0; c < m.cols; ++c) {
        if (p < pivots.size() && pivots[p] == c) {
            ++p;
            continue;
        }
        free_col = c;
        break;
    }
    std::vector<double> x(m.cols, 0.0);
    x[free_col] = 1.0;
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = -m(r, free_col);
    const double len = norm(x);
    for (double& v : x) v /= len;
    return x;
}

/// Solves a square system; nullopt when (numerically) singular.
inline std::optional<std::vector<double>> solve(Matrix a, std::vector<double> b, double tol = 1e-14) {
    const std::size_t n = a.rows;
    Matrix aug(n, n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
        aug(i, n) = b[i];
    }
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) scale = std::max(scale, std::abs(a(i, j)));
    const auto pivots = rref(aug, tol * std::max(scale, 1.0));
    if (pivots.size() != n || pivots.back() != n - 1) return std::nullopt;
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = aug(i, n);
    return x;
}

}  // namespace persistry::detail
