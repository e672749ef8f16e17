#pragma once

// Convex hull [S] of a point cloud without facet enumeration in the general
// case: membership is an LP feasibility problem, projection is a minimum-norm
// point problem. Facets are only enumerated (by brute force over d-subsets)
// where a boundary distance is needed.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "persistry/detail/linalg.hpp"
#include "persistry/error.hpp"
#include "persistry/point_cloud.hpp"

namespace persistry {

inline constexpr double kHullTolerance = 1e-8;

namespace detail {

/// Largest coordinate magnitude (at least 1). Tolerances are relative to it.
inline double coordinate_scale(const PointCloud& cloud) {
    double scale = 1.0;
    for (double c : cloud.coords()) scale = std::max(scale, std::abs(c));
    return scale;
}

}  // namespace detail

struct HullMembership {
    bool inside = false;
    std::vector<double> weights;  ///< convex weights reproducing the query when inside
    double infeasibility = 0.0;   ///< phase-1 objective, in scaled units
};

/// Decides whether `query` is a convex combination of the cloud's points by
/// solving the phase-1 LP  min sum(a)  s.t.  [S^T; 1^T] w + a = [q; 1], w, a >= 0
/// with Bland's rule. Coordinates are divided by the cloud's coordinate scale
/// first so the 1e-8 tolerance is relative.
inline HullMembership hull_membership(const PointCloud& cloud, std::span<const double> query,
                                      double tol = kHullTolerance) {
    if (query.size() != cloud.dim())
        throw InvalidArgument("query has " + std::to_string(query.size()) + " coordinates, cloud has dimension " +
                              std::to_string(cloud.dim()));
    const std::size_t n = cloud.size();
    const std::size_t rows = cloud.dim() + 1;
    const std::size_t cols = n + rows;  // weights, then artificials
    double scale = detail::coordinate_scale(cloud);
    for (double q : query) scale = std::max(scale, std::abs(q));

    detail::Matrix t(rows, cols + 1);  // last column is the right-hand side
    for (std::size_t k = 0; k < cloud.dim(); ++k) {
        for (std::size_t i = 0; i < n; ++i) t(k, i) = cloud.point(i)[k] / scale;
        t(k, cols) = query[k] / scale;
    }
    for (std::size_t i = 0; i < n; ++i) t(rows - 1, i) = 1.0;
    t(rows - 1, cols) = 1.0;
    for (std::size_t r = 0; r < rows; ++r) {
        if (t(r, cols) < 0.0)
            for (std::size_t c = 0; c <= cols; ++c) t(r, c) = -t(r, c);
        t(r, n + r) = 1.0;
    }
    std::vector<std::size_t> basis(rows);
    for (std::size_t r = 0; r < rows; ++r) basis[r] = n + r;

    constexpr double eps = 1e-12;
    const std::size_t max_pivots = 50 * cols + 100;
    for (std::size_t iter = 0; iter < max_pivots; ++iter) {
        // Reduced cost of column j is -sum_r t(r, j) for weights (artificials have cost 1).
        std::size_t entering = cols;
        for (std::size_t j = 0; j < cols; ++j) {
            if (std::find(basis.begin(), basis.end(), j) != basis.end()) continue;
            double reduced = j < n ? 0.0 : 1.0;
            for (std::size_t r = 0; r < rows; ++r) reduced -= (basis[r] >= n ? 1.0 : 0.0) * t(r, j);
            if (reduced < -eps) {
                entering = j;
                break;
            }
        }
        if (entering == cols) break;
        std::size_t leaving = rows;
        double best_ratio = std::numeric_limits<double>::infinity();
        for (std::size_t r = 0; r < rows; ++r) {
            if (t(r, entering) <= eps) continue;
            const double ratio = t(r, cols) / t(r, entering);
            if (leaving == rows || ratio < best_ratio - eps) {
                best_ratio = ratio;
                leaving = r;
            } else if (ratio <= best_ratio + eps && basis[r] < basis[leaving]) {
                leaving = r;
            }
        }
        if (leaving == rows) break;  // unbounded direction cannot occur in phase 1
        const double pivot = t(leaving, entering);
        for (std::size_t c = 0; c <= cols; ++c) t(leaving, c) /= pivot;
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == leaving || t(r, entering) == 0.0) continue;
            const double f = t(r, entering);
            for (std::size_t c = 0; c <= cols; ++c) t(r, c) -= f * t(leaving, c);
        }
        basis[leaving] = entering;
    }

    HullMembership result;
    result.weights.assign(n, 0.0);
    for (std::size_t r = 0; r < rows; ++r) {
        if (basis[r] >= n)
            result.infeasibility += std::max(0.0, t(r, cols));
        else
            result.weights[basis[r]] = std::max(0.0, t(r, cols));
    }
    result.inside = result.infeasibility <= tol;
    return result;
}

inline bool hull_contains(const PointCloud& cloud, std::span<const double> query, double tol = kHullTolerance) {
    return hull_membership(cloud, query, tol).inside;
}

struct MinNormPoint {
    std::vector<double> point;
    std::vector<double> weights;  ///< convex weights over the input vectors
};

/// Wolfe's algorithm for the point of minimum Euclidean norm in the convex
/// hull of `vectors` (each of equal dimension).
inline MinNormPoint min_norm_point(const std::vector<std::vector<double>>& vectors) {
    using detail::dot;
    const std::size_t m = vectors.size();
    if (m == 0) throw InvalidArgument("min_norm_point needs at least one vector");
    const std::size_t dim = vectors.front().size();

    double max_sq = 0.0;
    std::size_t start = 0;
    for (std::size_t i = 0; i < m; ++i) {
        const double sq = dot(vectors[i], vectors[i]);
        max_sq = std::max(max_sq, sq);
        if (sq < dot(vectors[start], vectors[start])) start = i;
    }
    const double tol_major = 1e-12 * std::max(max_sq, 1e-300);

    std::vector<std::size_t> active{start};
    std::vector<double> lambda{1.0};
    auto combine = [&](const std::vector<double>& coeffs) {
        std::vector<double> x(dim, 0.0);
        for (std::size_t a = 0; a < active.size(); ++a)
            for (std::size_t k = 0; k < dim; ++k) x[k] += coeffs[a] * vectors[active[a]][k];
        return x;
    };
    std::vector<double> x = vectors[start];

    for (std::size_t major = 0; major < 10 * m + 100; ++major) {
        std::size_t j = 0;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < m; ++i) {
            const double v = dot(x, vectors[i]);
            if (v < best) {
                best = v;
                j = i;
            }
        }
        if (dot(x, x) - best <= tol_major) break;
        if (std::find(active.begin(), active.end(), j) != active.end()) break;
        active.push_back(j);
        lambda.push_back(0.0);

        for (std::size_t minor = 0; minor < 10 * m + 100; ++minor) {
            // Affine minimizer over the active set: (G + 11^T) alpha = 1, mu = alpha / sum(alpha).
            const std::size_t s = active.size();
            detail::Matrix g(s, s);
            for (std::size_t a = 0; a < s; ++a)
                for (std::size_t b = 0; b < s; ++b) g(a, b) = dot(vectors[active[a]], vectors[active[b]]) + 1.0;
            auto alpha = detail::solve(g, std::vector<double>(s, 1.0), 1e-13);
            if (!alpha) {
                // Numerically dependent set; drop the newest vector and stop.
                active.pop_back();
                lambda.pop_back();
                return {combine(lambda), [&] {
                            std::vector<double> w(m, 0.0);
                            for (std::size_t a = 0; a < active.size(); ++a) w[active[a]] = lambda[a];
                            return w;
                        }()};
            }
            double total = 0.0;
            for (double v : *alpha) total += v;
            std::vector<double> mu(s);
            for (std::size_t a = 0; a < s; ++a) mu[a] = (*alpha)[a] / total;
            if (std::all_of(mu.begin(), mu.end(), [](double v) { return v > 1e-12; })) {
                lambda = mu;
                break;
            }
            double theta = 1.0;
            for (std::size_t a = 0; a < s; ++a)
                if (mu[a] <= 1e-12) theta = std::min(theta, lambda[a] / (lambda[a] - mu[a]));
            for (std::size_t a = 0; a < s; ++a) lambda[a] = lambda[a] + theta * (mu[a] - lambda[a]);
            std::vector<std::size_t> kept;
            std::vector<double> kept_lambda;
            for (std::size_t a = 0; a < s; ++a) {
                if (lambda[a] > 1e-12) {
                    kept.push_back(active[a]);
                    kept_lambda.push_back(lambda[a]);
                }
            }
            active = std::move(kept);
            lambda = std::move(kept_lambda);
            double sum = 0.0;
            for (double v : lambda) sum += v;
            for (double& v : lambda) v /= sum;
        }
        x = combine(lambda);
    }

    MinNormPoint result{x, std::vector<double>(m, 0.0)};
    for (std::size_t a = 0; a < active.size(); ++a) result.weights[active[a]] = lambda[a];
    return result;
}

/// Closest point of [S] to `query`.
inline std::vector<double> project_onto_hull(const PointCloud& cloud, std::span<const double> query) {
    if (query.size() != cloud.dim()) throw InvalidArgument("dimension mismatch");
    std::vector<std::vector<double>> shifted(cloud.size(), std::vector<double>(cloud.dim()));
    for (std::size_t i = 0; i < cloud.size(); ++i)
        for (std::size_t k = 0; k < cloud.dim(); ++k) shifted[i][k] = cloud.point(i)[k] - query[k];
    auto mnp = min_norm_point(shifted);
    std::vector<double> out(cloud.dim());
    for (std::size_t k = 0; k < cloud.dim(); ++k) out[k] = query[k] + mnp.point[k];
    return out;
}

/// Dimension of the affine span of the cloud.
inline std::size_t affine_rank(const PointCloud& cloud) {
    if (cloud.size() < 2) return 0;
    detail::Matrix diffs(cloud.size() - 1, cloud.dim());
    for (std::size_t i = 1; i < cloud.size(); ++i)
        for (std::size_t k = 0; k < cloud.dim(); ++k) diffs(i - 1, k) = cloud.point(i)[k] - cloud.point(0)[k];
    return detail::rank(std::move(diffs), 1e-10 * detail::coordinate_scale(cloud));
}

/// Closed half-space {x : normal . x <= offset} with a unit normal.
struct HalfSpace {
    std::vector<double> normal;
    double offset = 0.0;

    /// Distance from an interior point to the bounding hyperplane (negative outside).
    double slack(std::span<const double> x) const { return offset - detail::dot(normal, x); }
};

/// Facet description of a full-dimensional hull, found by testing every
/// d-subset of points as a candidate supporting hyperplane. Empty when the
/// hull has no interior.
inline std::vector<HalfSpace> hull_facets(const PointCloud& cloud) {
    const std::size_t n = cloud.size();
    const std::size_t d = cloud.dim();
    if (n <= d || affine_rank(cloud) < d) return {};

    double candidates = 1.0;
    for (std::size_t k = 0; k < d; ++k) candidates = candidates * static_cast<double>(n - k) / static_cast<double>(k + 1);
    if (candidates > 5e6)
        throw InvalidArgument("hull facet enumeration over " + std::to_string(static_cast<long long>(candidates)) +
                              " subsets is too large");

    const double scale = detail::coordinate_scale(cloud);
    const double tol = 1e-9 * scale;
    std::vector<HalfSpace> facets;
    std::vector<std::size_t> subset(d);
    for (std::size_t k = 0; k < d; ++k) subset[k] = k;
    while (true) {
        detail::Matrix diffs(d - 1, d);
        for (std::size_t r = 1; r < d; ++r)
            for (std::size_t k = 0; k < d; ++k)
                diffs(r - 1, k) = cloud.point(subset[r])[k] - cloud.point(subset[0])[k];
        if (auto normal = detail::null_vector(std::move(diffs), 1e-10 * scale)) {
            const double offset = detail::dot(*normal, cloud.point(subset[0]));
            bool above = false;
            bool below = false;
            for (std::size_t i = 0; i < n; ++i) {
                const double side = detail::dot(*normal, cloud.point(i)) - offset;
                above |= side > tol;
                below |= side < -tol;
            }
            if (!(above && below)) {
                HalfSpace h{*normal, offset};
                if (above) {
                    for (double& v : h.normal) v = -v;
                    h.offset = -h.offset;
                }
                const bool duplicate = std::any_of(facets.begin(), facets.end(), [&](const HalfSpace& f) {
                    double diff = std::abs(f.offset - h.offset);
                    for (std::size_t k = 0; k < d; ++k) diff += scale * std::abs(f.normal[k] - h.normal[k]);
                    return diff <= 1e3 * tol;
                });
                if (!duplicate) facets.push_back(std::move(h));
            }
        }
        // next combination
        std::size_t k = d;
        while (k > 0 && subset[k - 1] == n - d + k - 1) --k;
        if (k == 0) break;
        ++subset[k - 1];
        for (std::size_t r = k; r < d; ++r) subset[r] = subset[r - 1] + 1;
    }
    return facets;
}

}  // namespace persistry
