#pragma once

// Tunneling: the largest ball that fits inside the convex hull [S] without
// containing a point of S. For a candidate center x the admissible radius is
//
//     clearance(x) = min( min_i |x - s_i| , distance from x to the boundary of [S] )
//
// and tun(S) = 2 * max over x in [S] of clearance(x).

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "persistry/detail/linalg.hpp"
#include "persistry/detail/simplex.hpp"
#include "persistry/hull.hpp"
#include "persistry/point_cloud.hpp"

namespace persistry {

enum class TunnelingMethod { GridOracle2d, MultistartMaxmin };

inline std::string_view to_string(TunnelingMethod m) {
    return m == TunnelingMethod::GridOracle2d ? "grid-oracle-2d" : "multistart-maxmin";
}

struct TunnelingEstimate {
    double diameter = 0.0;
    std::vector<double> center;
    TunnelingMethod method = TunnelingMethod::MultistartMaxmin;
    int starts_used = 0;
    bool degenerate_hull = false;
};

struct TunnelingConfig {
    int starts = 32;
    int iterations = 100;
    std::uint64_t seed = 20140413;
};

namespace detail {

inline std::vector<double> centroid(const PointCloud& cloud) {
    std::vector<double> c(cloud.dim(), 0.0);
    for (std::size_t i = 0; i < cloud.size(); ++i)
        for (std::size_t k = 0; k < cloud.dim(); ++k) c[k] += cloud.point(i)[k];
    for (double& v : c) v /= static_cast<double>(cloud.size());
    return c;
}

/// Points sorted lexicographically by coordinates so results do not depend on input order.
inline PointCloud canonical_order(const PointCloud& cloud) {
    std::vector<std::size_t> order(cloud.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        auto pa = cloud.point(a);
        auto pb = cloud.point(b);
        return std::lexicographical_compare(pa.begin(), pa.end(), pb.begin(), pb.end());
    });
    std::vector<std::string> labels;
    std::vector<double> coords;
    for (std::size_t i : order) {
        labels.push_back(cloud.label(i));
        auto p = cloud.point(i);
        coords.insert(coords.end(), p.begin(), p.end());
    }
    return PointCloud(cloud.dim(), std::move(labels), std::move(coords));
}

struct Clearance {
    const PointCloud& cloud;
    const std::vector<HalfSpace>& facets;

    double operator()(std::span<const double> x) const {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < cloud.size(); ++i) best = std::min(best, distance(x, cloud.point(i)));
        for (const auto& f : facets) best = std::min(best, f.slack(x));
        return best;
    }

    struct Step {
        std::vector<double> move;
        double predicted = 0.0;  ///< linearized clearance after the move
    };

    /// Maximizes the linearized clearance over the box |move|_inf <= radius
    /// (a small LP). Pieces that cannot become the minimum inside the box are
    /// left out.
    Step trust_region_step(std::span<const double> x, double value, double radius) const {
        const std::size_t dim = cloud.dim();
        const double reach = 2.0 * radius * std::sqrt(static_cast<double>(dim));
        std::vector<std::vector<double>> grads;
        std::vector<double> values;
        for (std::size_t i = 0; i < cloud.size(); ++i) {
            const double dist = distance(x, cloud.point(i));
            if (dist > value + reach) continue;
            std::vector<double> g(dim);
            if (dist > 0.0) {
                for (std::size_t k = 0; k < dim; ++k) g[k] = (x[k] - cloud.point(i)[k]) / dist;
            } else {
                const auto c = centroid(cloud);
                const double len = distance(c, cloud.point(i));
                for (std::size_t k = 0; k < dim; ++k) g[k] = len > 0.0 ? (c[k] - cloud.point(i)[k]) / len : 0.0;
            }
            grads.push_back(std::move(g));
            values.push_back(dist);
        }
        for (const auto& f : facets) {
            const double slack = f.slack(x);
            if (slack > value + reach) continue;
            std::vector<double> g(f.normal);
            for (double& v : g) v = -v;
            grads.push_back(std::move(g));
            values.push_back(std::max(0.0, slack));
        }
        // z = (move+, move-, t);  -g.(move+ - move-) + t <= value_i;  move+-_k <= radius
        const std::size_t cols = 2 * dim + 1;
        Matrix a(grads.size() + 2 * dim, cols);
        std::vector<double> b(a.rows);
        for (std::size_t r = 0; r < grads.size(); ++r) {
            for (std::size_t k = 0; k < dim; ++k) {
                a(r, k) = -grads[r][k];
                a(r, dim + k) = grads[r][k];
            }
            a(r, 2 * dim) = 1.0;
            b[r] = values[r];
        }
        for (std::size_t k = 0; k < 2 * dim; ++k) {
            a(grads.size() + k, k) = 1.0;
            b[grads.size() + k] = radius;
        }
        std::vector<double> c(cols, 0.0);
        c[2 * dim] = 1.0;
        const auto lp = maximize_lp(a, b, c);
        Step step{std::vector<double>(dim, 0.0), value};
        if (!lp.optimal) return step;
        for (std::size_t k = 0; k < dim; ++k) step.move[k] = lp.z[k] - lp.z[dim + k];
        step.predicted = lp.z[2 * dim];
        return step;
    }
};

}  // namespace detail

/// Lower-bound estimate of the tunneling constant by multi-start local
/// maximization of the clearance. Each step maximizes the linearized
/// clearance inside a trust region (sequential LP; facet pieces are exact, so
/// steps stay in [S], with a projection onto [S] as a guard). Starts are
/// seeded uniform samples of the bounding box that pass the hull membership
/// test; when rejection sampling cannot find enough (typical in high
/// dimension) the rest are random convex combinations of the points.
inline TunnelingEstimate tunneling(const PointCloud& input, const TunnelingConfig& config = {}) {
    if (input.size() < 2) throw InvalidArgument("tunneling needs at least two points");
    if (config.starts < 1 || config.iterations < 1) throw InvalidArgument("tunneling needs positive starts and iterations");

    const PointCloud cloud = detail::canonical_order(input);
    const std::size_t dim = cloud.dim();
    TunnelingEstimate estimate;
    estimate.method = TunnelingMethod::MultistartMaxmin;
    estimate.center = detail::centroid(cloud);

    const auto facets = hull_facets(cloud);
    if (facets.empty()) {
        estimate.degenerate_hull = true;
        return estimate;
    }
    const detail::Clearance clearance{cloud, facets};

    std::vector<double> lo(cloud.point(0).begin(), cloud.point(0).end());
    std::vector<double> hi = lo;
    for (std::size_t i = 1; i < cloud.size(); ++i)
        for (std::size_t k = 0; k < dim; ++k) {
            lo[k] = std::min(lo[k], cloud.point(i)[k]);
            hi[k] = std::max(hi[k], cloud.point(i)[k]);
        }
    double diagonal = 0.0;
    for (std::size_t k = 0; k < dim; ++k) diagonal += (hi[k] - lo[k]) * (hi[k] - lo[k]);
    diagonal = std::sqrt(diagonal);
    const double min_step = 1e-10 * std::max(diagonal, 1.0);

    std::mt19937_64 rng(config.seed);
    std::vector<std::vector<double>> starts;
    const int max_attempts = 64 * config.starts;
    for (int attempt = 0; attempt < max_attempts && static_cast<int>(starts.size()) < config.starts; ++attempt) {
        std::vector<double> x(dim);
        for (std::size_t k = 0; k < dim; ++k) x[k] = std::uniform_real_distribution<double>(lo[k], hi[k])(rng);
        // facet slacks reject cheaply; the feasibility solve decides
        const bool maybe_inside = std::all_of(facets.begin(), facets.end(),
                                              [&](const HalfSpace& f) { return f.slack(x) >= -1e-9 * diagonal; });
        if (maybe_inside && hull_contains(cloud, x)) starts.push_back(std::move(x));
    }
    std::exponential_distribution<double> exponential(1.0);
    while (static_cast<int>(starts.size()) < config.starts) {
        std::vector<double> w(cloud.size());
        double total = 0.0;
        for (double& v : w) total += (v = exponential(rng));
        std::vector<double> x(dim, 0.0);
        for (std::size_t i = 0; i < cloud.size(); ++i)
            for (std::size_t k = 0; k < dim; ++k) x[k] += w[i] / total * cloud.point(i)[k];
        starts.push_back(std::move(x));
    }

    double best_value = -std::numeric_limits<double>::infinity();
    for (auto& x : starts) {
        double value = clearance(x);
        double radius = std::max(value, 1e-3 * diagonal);  // trust region, infinity norm
        for (int iter = 0; iter < config.iterations && radius > min_step; ++iter) {
            const auto step = clearance.trust_region_step(x, value, radius);
            const double predicted = step.predicted - value;
            if (predicted <= 1e-13 * std::max(diagonal, 1.0)) break;
            std::vector<double> candidate(dim);
            double step_len = 0.0;
            for (std::size_t k = 0; k < dim; ++k) {
                candidate[k] = x[k] + step.move[k];
                step_len = std::max(step_len, std::abs(step.move[k]));
            }
            if (std::any_of(facets.begin(), facets.end(), [&](const HalfSpace& f) { return f.slack(candidate) < 0.0; }))
                candidate = project_onto_hull(cloud, candidate);
            const double candidate_value = clearance(candidate);
            const double actual = candidate_value - value;
            if (actual >= 0.1 * predicted) {
                x = std::move(candidate);
                value = candidate_value;
                if (actual >= 0.75 * predicted && step_len >= 0.99 * radius) radius = std::min(2.0 * radius, diagonal);
            } else {
                radius = 0.25 * std::max(step_len, min_step);
            }
        }
        if (value > best_value) {
            best_value = value;
            estimate.center = x;
        }
        ++estimate.starts_used;
    }
    estimate.diameter = 2.0 * std::max(0.0, best_value);
    return estimate;
}

/// Brute-force planar reference: evaluates the clearance on a
/// resolution x resolution grid spanning the bounding box, skipping grid
/// points outside the hull. Builds its own hull (monotone chain) and does not
/// share code with the estimator above.
inline TunnelingEstimate tunneling_oracle_2d(const PointCloud& cloud, int resolution) {
    if (cloud.dim() != 2) throw InvalidArgument("oracle is planar only");
    if (resolution < 2) throw InvalidArgument("oracle resolution must be at least 2");

    using P = std::array<double, 2>;
    std::vector<P> pts;
    for (std::size_t i = 0; i < cloud.size(); ++i) pts.push_back({cloud.point(i)[0], cloud.point(i)[1]});
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    auto cross = [](const P& o, const P& a, const P& b) {
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
    };
    std::vector<P> hull;
    if (pts.size() >= 3) {
        std::vector<P> h(2 * pts.size());
        std::size_t k = 0;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            while (k >= 2 && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
            h[k++] = pts[i];
        }
        for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
            while (k >= t && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
            h[k++] = pts[i];
        }
        h.resize(k - 1);
        hull = std::move(h);
    }

    TunnelingEstimate estimate;
    estimate.method = TunnelingMethod::GridOracle2d;
    estimate.center = {pts.front()[0], pts.front()[1]};
    double area = 0.0;
    for (std::size_t i = 0; i < hull.size(); ++i) {
        const P& a = hull[i];
        const P& b = hull[(i + 1) % hull.size()];
        area += a[0] * b[1] - a[1] * b[0];
    }
    double extent = 0.0;
    for (const auto& p : pts) extent = std::max({extent, std::abs(p[0]), std::abs(p[1])});
    if (hull.size() < 3 || std::abs(area) <= 1e-12 * std::max(extent * extent, 1.0)) {
        estimate.degenerate_hull = true;
        return estimate;
    }

    // Inward distance to each counter-clockwise edge line.
    struct Edge {
        double nx, ny, c;  // inside: nx*x + ny*y + c >= 0, (nx, ny) unit
    };
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < hull.size(); ++i) {
        const P& a = hull[i];
        const P& b = hull[(i + 1) % hull.size()];
        const double ex = b[0] - a[0];
        const double ey = b[1] - a[1];
        const double len = std::hypot(ex, ey);
        const double nx = -ey / len;
        const double ny = ex / len;
        edges.push_back({nx, ny, -(nx * a[0] + ny * a[1])});
    }

    double x0 = pts.front()[0], x1 = x0, y0 = pts.front()[1], y1 = y0;
    for (const auto& p : pts) {
        x0 = std::min(x0, p[0]);
        x1 = std::max(x1, p[0]);
        y0 = std::min(y0, p[1]);
        y1 = std::max(y1, p[1]);
    }
    double best = -1.0;
    for (int i = 0; i < resolution; ++i) {
        const double x = x0 + (x1 - x0) * i / (resolution - 1);
        for (int j = 0; j < resolution; ++j) {
            const double y = y0 + (y1 - y0) * j / (resolution - 1);
            double value = std::numeric_limits<double>::infinity();
            for (const auto& e : edges) value = std::min(value, e.nx * x + e.ny * y + e.c);
            if (value < 0.0 || value <= best) continue;  // outside, or cannot improve
            for (const auto& p : pts) value = std::min(value, std::hypot(x - p[0], y - p[1]));
            if (value > best) {
                best = value;
                estimate.center = {x, y};
            }
        }
    }
    estimate.diameter = 2.0 * std::max(best, 0.0);
    estimate.starts_used = resolution * resolution;
    return estimate;
}

}  // namespace persistry
