#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "persistry/detail/linalg.hpp"
#include "persistry/error.hpp"
#include "persistry/point_cloud.hpp"

namespace persistry {

/// A vertex, edge or triangle: strictly increasing point indices plus the
/// filtration value at which it enters.
struct Simplex {
    std::vector<std::size_t> vertices;
    double value = 0.0;

    std::size_t dim() const { return vertices.size() - 1; }

    friend bool operator==(const Simplex&, const Simplex&) = default;
};

/// Filtration order: value, then dimension, then lexicographic vertices.
inline bool filtration_less(const Simplex& a, const Simplex& b) {
    if (a.value != b.value) return a.value < b.value;
    if (a.vertices.size() != b.vertices.size()) return a.vertices.size() < b.vertices.size();
    return a.vertices < b.vertices;
}

enum class FiltrationKind { Rips, Cech };

inline std::string_view to_string(FiltrationKind k) { return k == FiltrationKind::Rips ? "rips" : "cech"; }

struct Filtration {
    std::vector<Simplex> simplices;
    FiltrationKind kind = FiltrationKind::Rips;
    double max_value = 0.0;
    int max_dim = 2;
    std::size_t vertex_count = 0;

    std::size_t count(std::size_t dim) const {
        return static_cast<std::size_t>(std::count_if(simplices.begin(), simplices.end(),
                                                      [dim](const Simplex& s) { return s.dim() == dim; }));
    }
};

/// Default scale cap: comfortably past the diameter, so the complex ends complete.
inline double default_max_value(const DistanceMatrix& dm) { return 1.1 * dm.max_entry(); }

struct Ball {
    std::vector<double> center;
    double radius = 0.0;
};

/// Smallest ball containing one, two or three points.
inline Ball min_enclosing_ball(const std::vector<std::vector<double>>& points) {
    if (points.empty() || points.size() > 3) throw InvalidArgument("min_enclosing_ball takes 1 to 3 points");
    const std::size_t dim = points.front().size();
    for (const auto& p : points)
        if (p.size() != dim) throw InvalidArgument("min_enclosing_ball points must share a dimension");

    auto diametral = [dim](const std::vector<double>& a, const std::vector<double>& b) {
        Ball ball{std::vector<double>(dim), distance(a, b) / 2.0};
        for (std::size_t k = 0; k < dim; ++k) ball.center[k] = (a[k] + b[k]) / 2.0;
        return ball;
    };
    if (points.size() == 1) return {points[0], 0.0};
    if (points.size() == 2) return diametral(points[0], points[1]);

    // Diametral ball of the longest side when it already holds the third point.
    const std::array<std::array<std::size_t, 3>, 3> sides{{{0, 1, 2}, {0, 2, 1}, {1, 2, 0}}};
    std::size_t longest = 0;
    double longest_len = -1.0;
    for (std::size_t s = 0; s < 3; ++s) {
        const double len = distance(points[sides[s][0]], points[sides[s][1]]);
        if (len > longest_len) {
            longest_len = len;
            longest = s;
        }
    }
    Ball ball = diametral(points[sides[longest][0]], points[sides[longest][1]]);
    if (distance(ball.center, points[sides[longest][2]]) <= ball.radius * (1.0 + 1e-12)) return ball;

    // Circumscribed ball in the triangle's plane: center = a + alpha*u + beta*v.
    const auto& a = points[0];
    std::vector<double> u(dim), v(dim);
    for (std::size_t k = 0; k < dim; ++k) {
        u[k] = points[1][k] - a[k];
        v[k] = points[2][k] - a[k];
    }
    const double uu = detail::dot(u, u), uv = detail::dot(u, v), vv = detail::dot(v, v);
    const double det = uu * vv - uv * uv;
    if (det <= 1e-14 * uu * vv) return ball;  // collinear: the diametral ball already encloses all three
    const double alpha = vv * (uu - uv) / (2.0 * det);
    const double beta = uu * (vv - uv) / (2.0 * det);
    Ball circum{std::vector<double>(dim), 0.0};
    for (std::size_t k = 0; k < dim; ++k) circum.center[k] = a[k] + alpha * u[k] + beta * v[k];
    circum.radius = distance(circum.center, a);
    return circum;
}

namespace detail {

inline void check_filtration_args(int max_dim, double max_value) {
    if (max_dim != 1 && max_dim != 2) throw InvalidArgument("max_dim must be 1 or 2");
    if (!(max_value > 0.0)) throw InvalidArgument("max_value must be positive");
}

template <typename TriangleValue>
Filtration build_flag_like(const DistanceMatrix& dm, int max_dim, double max_value, FiltrationKind kind,
                           TriangleValue triangle_value) {
    check_filtration_args(max_dim, max_value);
    const std::size_t n = dm.size();
    Filtration f;
    f.kind = kind;
    f.max_value = max_value;
    f.max_dim = max_dim;
    f.vertex_count = n;
    for (std::size_t i = 0; i < n; ++i) f.simplices.push_back({{i}, 0.0});
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (dm(i, j) <= max_value) f.simplices.push_back({{i, j}, dm(i, j)});
    if (max_dim >= 2) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                if (dm(i, j) > max_value) continue;
                for (std::size_t k = j + 1; k < n; ++k) {
                    if (dm(i, k) > max_value || dm(j, k) > max_value) continue;
                    const double value = triangle_value(i, j, k);
                    if (value <= max_value) f.simplices.push_back({{i, j, k}, value});
                }
            }
    }
    std::sort(f.simplices.begin(), f.simplices.end(), filtration_less);
    return f;
}

}  // namespace detail

/// Vietoris-Rips filtration up to triangles: an edge enters at its length, a
/// triangle at its longest edge.
inline Filtration rips_filtration(const DistanceMatrix& dm, int max_dim, double max_value) {
    return detail::build_flag_like(dm, max_dim, max_value, FiltrationKind::Rips,
                                   [&dm](std::size_t i, std::size_t j, std::size_t k) {
                                       return std::max({dm(i, j), dm(i, k), dm(j, k)});
                                   });
}

inline Filtration rips_filtration(const DistanceMatrix& dm, int max_dim = 2) {
    return rips_filtration(dm, max_dim, dm.size() > 1 ? default_max_value(dm) : 1.0);
}

/// Čech filtration up to triangles on the diameter scale: a simplex enters at
/// twice its minimum enclosing ball radius, so edges match the Rips edges.
inline Filtration cech_filtration(const PointCloud& cloud, int max_dim, double max_value) {
    const auto dm = build_distance_matrix(cloud);
    return detail::build_flag_like(dm, max_dim, max_value, FiltrationKind::Cech,
                                   [&cloud, &dm](std::size_t i, std::size_t j, std::size_t k) {
                                       const double ball = 2.0 * min_enclosing_ball({cloud.row(i), cloud.row(j),
                                                                                     cloud.row(k)})
                                                                     .radius;
                                       // never below a face value
                                       return std::max({ball, dm(i, j), dm(i, k), dm(j, k)});
                                   });
}

/// Checks ordering and closure; returns the index of each simplex's faces.
/// Throws when a face is missing or appears after its coface.
inline std::vector<std::vector<std::size_t>> face_indices(const Filtration& f) {
    std::vector<std::vector<std::size_t>> faces(f.simplices.size());
    std::vector<std::pair<std::vector<std::size_t>, std::size_t>> index;
    index.reserve(f.simplices.size());
    for (std::size_t s = 0; s < f.simplices.size(); ++s) index.emplace_back(f.simplices[s].vertices, s);
    std::sort(index.begin(), index.end());
    auto lookup = [&](const std::vector<std::size_t>& vertices) -> std::size_t {
        auto it = std::lower_bound(index.begin(), index.end(), std::make_pair(vertices, std::size_t{0}));
        if (it == index.end() || it->first != vertices) throw InvalidArgument("filtration order violated");
        return it->second;
    };
    for (std::size_t s = 0; s < f.simplices.size(); ++s) {
        const auto& simplex = f.simplices[s];
        if (simplex.vertices.empty() || simplex.vertices.size() > 3 ||
            !std::is_sorted(simplex.vertices.begin(), simplex.vertices.end()) ||
            std::adjacent_find(simplex.vertices.begin(), simplex.vertices.end()) != simplex.vertices.end())
            throw InvalidArgument("malformed simplex in filtration");
        if (simplex.vertices.size() == 1) continue;
        for (std::size_t drop = 0; drop < simplex.vertices.size(); ++drop) {
            std::vector<std::size_t> face;
            for (std::size_t v = 0; v < simplex.vertices.size(); ++v)
                if (v != drop) face.push_back(simplex.vertices[v]);
            const std::size_t at = lookup(face);
            if (at >= s || f.simplices[at].value > simplex.value) throw InvalidArgument("filtration order violated");
            faces[s].push_back(at);
        }
        std::sort(faces[s].begin(), faces[s].end());
    }
    return faces;
}

}  // namespace persistry
