#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "persistry/error.hpp"

namespace persistry {

using Vector = std::vector<double>;

inline double squared_distance(std::span<const double> a, std::span<const double> b) {
    double sum = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double diff = a[k] - b[k];
        sum += diff * diff;
    }
    return sum;
}

inline double distance(std::span<const double> a, std::span<const double> b) {
    return std::sqrt(squared_distance(a, b));
}

/// Labeled points in R^d. Coordinates are stored row-major; labels are unique.
class PointCloud {
public:
    PointCloud(std::size_t dim, std::vector<std::string> labels, std::vector<double> coords)
        : dim_(dim), labels_(std::move(labels)), coords_(std::move(coords)) {
        if (dim_ == 0) throw InvalidArgument("point cloud dimension must be positive");
        if (labels_.empty()) throw InvalidArgument("point cloud must contain at least one point");
        if (coords_.size() != labels_.size() * dim_)
            throw InvalidArgument("every point must have exactly " + std::to_string(dim_) + " coordinates");
        std::unordered_set<std::string> seen;
        for (const auto& label : labels_)
            if (!seen.insert(label).second) throw InvalidArgument("duplicate point label '" + label + "'");
        for (double c : coords_)
            if (!std::isfinite(c)) throw InvalidArgument("point coordinates must be finite");
    }

    /// Unlabeled points; labels become "p0", "p1", ...
    static PointCloud from_rows(const std::vector<Vector>& rows) {
        if (rows.empty()) throw InvalidArgument("point cloud must contain at least one point");
        const std::size_t dim = rows.front().size();
        std::vector<std::string> labels;
        std::vector<double> coords;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != dim)
                throw InvalidArgument("every point must have exactly " + std::to_string(dim) + " coordinates");
            labels.push_back("p" + std::to_string(i));
            coords.insert(coords.end(), rows[i].begin(), rows[i].end());
        }
        return PointCloud(dim, std::move(labels), std::move(coords));
    }

    std::size_t size() const noexcept { return labels_.size(); }
    std::size_t dim() const noexcept { return dim_; }

    std::span<const double> point(std::size_t i) const { return {coords_.data() + i * dim_, dim_}; }
    const std::string& label(std::size_t i) const { return labels_[i]; }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    const std::vector<double>& coords() const noexcept { return coords_; }

    Vector row(std::size_t i) const {
        auto p = point(i);
        return {p.begin(), p.end()};
    }

    /// Coordinates multiplied per axis; the hook for optional stat normalization.
    PointCloud scaled(std::span<const double> factors) const {
        if (factors.size() != dim_) throw InvalidArgument("scaling needs one factor per coordinate");
        std::vector<double> out = coords_;
        for (std::size_t i = 0; i < out.size(); ++i) out[i] *= factors[i % dim_];
        return PointCloud(dim_, labels_, std::move(out));
    }

    PointCloud scaled(double factor) const { return scaled(Vector(dim_, factor)); }

    /// Same cloud with one more point appended.
    PointCloud with_point(std::string label, std::span<const double> p) const {
        if (p.size() != dim_) throw InvalidArgument("dimension mismatch");
        auto labels = labels_;
        auto coords = coords_;
        labels.push_back(std::move(label));
        coords.insert(coords.end(), p.begin(), p.end());
        return PointCloud(dim_, std::move(labels), std::move(coords));
    }

private:
    std::size_t dim_;
    std::vector<std::string> labels_;
    std::vector<double> coords_;
};

/// Symmetric matrix of pairwise Euclidean distances with zero diagonal.
class DistanceMatrix {
public:
    explicit DistanceMatrix(std::size_t n) : n_(n), entries_(n * n, 0.0) {}

    std::size_t size() const noexcept { return n_; }
    double operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }

    void set(std::size_t i, std::size_t j, double value) {
        entries_[i * n_ + j] = value;
        entries_[j * n_ + i] = value;
    }

    double max_entry() const {
        return entries_.empty() ? 0.0 : *std::max_element(entries_.begin(), entries_.end());
    }

private:
    std::size_t n_;
    std::vector<double> entries_;
};

inline DistanceMatrix build_distance_matrix(const PointCloud& cloud) {
    DistanceMatrix dm(cloud.size());
    for (std::size_t i = 0; i < cloud.size(); ++i)
        for (std::size_t j = i + 1; j < cloud.size(); ++j) dm.set(i, j, distance(cloud.point(i), cloud.point(j)));
    return dm;
}

/// Disjoint-set forest with path halving and union by size.
class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n), size_(n, 1) { std::iota(parent_.begin(), parent_.end(), 0); }

    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (size_[a] < size_[b]) std::swap(a, b);
        parent_[b] = a;
        size_[a] += size_[b];
        return true;
    }

private:
    std::vector<std::size_t> parent_;
    std::vector<std::size_t> size_;
};

struct WeightedEdge {
    std::size_t u;
    std::size_t v;
    double length;
};

/// Kruskal minimum spanning forest. Equal lengths are taken in lexicographic (u, v) order.
inline std::vector<WeightedEdge> minimum_spanning_tree(const DistanceMatrix& dm) {
    std::vector<WeightedEdge> edges;
    const std::size_t n = dm.size();
    edges.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) edges.push_back({i, j, dm(i, j)});
    std::stable_sort(edges.begin(), edges.end(),
                     [](const WeightedEdge& a, const WeightedEdge& b) { return a.length < b.length; });
    UnionFind components(n);
    std::vector<WeightedEdge> tree;
    for (const auto& e : edges) {
        if (components.unite(e.u, e.v)) tree.push_back(e);
        if (tree.size() + 1 == n) break;
    }
    return tree;
}

/// Nondecreasing single-linkage merge distances; values[0] is the sparsity.
struct SparsityProfile {
    std::vector<double> values;

    double sparsity() const { return values.front(); }
    double top() const { return values.back(); }
};

namespace detail {
inline void require_pairs(const PointCloud& cloud) {
    if (cloud.size() < 2) throw InvalidArgument("sparsity undefined for fewer than two points");
}
}  // namespace detail

/// Minimal pairwise distance.
inline double sparsity(const PointCloud& cloud) {
    detail::require_pairs(cloud);
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < cloud.size(); ++i)
        for (std::size_t j = i + 1; j < cloud.size(); ++j)
            best = std::min(best, distance(cloud.point(i), cloud.point(j)));
    return best;
}

/// Progressive minimal distances: the sorted edge lengths of a minimum spanning tree.
inline SparsityProfile degree_sparsity(const PointCloud& cloud) {
    detail::require_pairs(cloud);
    SparsityProfile profile;
    for (const auto& e : minimum_spanning_tree(build_distance_matrix(cloud))) profile.values.push_back(e.length);
    return profile;
}

}  // namespace persistry
