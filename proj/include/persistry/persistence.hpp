#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <limits>
#include <vector>

#include "persistry/error.hpp"
#include "persistry/filtration.hpp"

namespace persistry {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Boundary matrix over GF(2): column j lists the (sorted) row indices of the
/// faces of simplex j in filtration order.
class BoundaryMatrix {
public:
    explicit BoundaryMatrix(const Filtration& f) : columns_(face_indices(f)) {}

    std::size_t size() const noexcept { return columns_.size(); }
    const std::vector<std::size_t>& column(std::size_t j) const { return columns_[j]; }

    /// Standard column reduction. Returns low(j) for every column, or npos for zero columns.
    std::vector<std::size_t> reduce() {
        std::vector<std::size_t> low(columns_.size(), npos);
        std::vector<std::size_t> owner(columns_.size(), npos);  // row -> column whose low it is
        for (std::size_t j = 0; j < columns_.size(); ++j) {
            auto& col = columns_[j];
            while (!col.empty() && owner[col.back()] != npos) add_into(columns_[owner[col.back()]], col);
            if (!col.empty()) {
                low[j] = col.back();
                owner[col.back()] = j;
            }
        }
        return low;
    }

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

private:
    // col <- col + source (symmetric difference of sorted index sets)
    static void add_into(const std::vector<std::size_t>& source, std::vector<std::size_t>& col) {
        std::vector<std::size_t> sum;
        sum.reserve(source.size() + col.size());
        std::set_symmetric_difference(col.begin(), col.end(), source.begin(), source.end(), std::back_inserter(sum));
        col.swap(sum);
    }

    std::vector<std::vector<std::size_t>> columns_;
};

/// [birth, death); death is +infinity for essential classes.
struct PersistenceInterval {
    int dim = 0;
    double birth = 0.0;
    double death = kInfinity;

    bool infinite() const { return death == kInfinity; }
    double length() const { return death - birth; }

    friend bool operator==(const PersistenceInterval&, const PersistenceInterval&) = default;
};

inline bool interval_less(const PersistenceInterval& a, const PersistenceInterval& b) {
    if (a.birth != b.birth) return a.birth < b.birth;
    return a.death < b.death;
}

struct Barcode {
    std::vector<PersistenceInterval> dim0;
    std::vector<PersistenceInterval> dim1;
    std::size_t cloud_cardinality = 0;

    const std::vector<PersistenceInterval>& intervals(int dim) const {
        if (dim == 0) return dim0;
        if (dim == 1) return dim1;
        throw InvalidArgument("barcodes are kept for dimensions 0 and 1 only");
    }

    std::vector<double> finite_deaths(int dim) const {
        std::vector<double> out;
        for (const auto& bar : intervals(dim))
            if (!bar.infinite()) out.push_back(bar.death);
        std::sort(out.begin(), out.end());
        return out;
    }
};

/// Persistence intervals of dimension <= max_dim (0 or 1) from a filtration.
/// Pairs (i, j) from the reduced boundary matrix give [value(i), value(j));
/// unpaired positive simplices give infinite bars; zero-length bars are dropped.
inline Barcode compute_intervals(const Filtration& f, int max_dim = 1) {
    if (max_dim != 0 && max_dim != 1) throw InvalidArgument("max_dim must be 0 or 1");
    BoundaryMatrix matrix(f);
    const auto low = matrix.reduce();

    Barcode barcode;
    barcode.cloud_cardinality = f.vertex_count;
    std::vector<bool> paired(f.simplices.size(), false);
    for (std::size_t j = 0; j < low.size(); ++j) {
        if (low[j] == BoundaryMatrix::npos) continue;
        paired[low[j]] = true;
        paired[j] = true;
        const Simplex& birth = f.simplices[low[j]];
        const int dim = static_cast<int>(birth.dim());
        if (dim > max_dim || !(f.simplices[j].value > birth.value)) continue;
        (dim == 0 ? barcode.dim0 : barcode.dim1).push_back({dim, birth.value, f.simplices[j].value});
    }
    for (std::size_t j = 0; j < low.size(); ++j) {
        if (paired[j]) continue;
        const int dim = static_cast<int>(f.simplices[j].dim());
        if (dim > max_dim) continue;
        (dim == 0 ? barcode.dim0 : barcode.dim1).push_back({dim, f.simplices[j].value, kInfinity});
    }
    std::stable_sort(barcode.dim0.begin(), barcode.dim0.end(), interval_less);
    std::stable_sort(barcode.dim1.begin(), barcode.dim1.end(), interval_less);
    return barcode;
}

/// Number of bars of the given dimension alive at t (birth <= t < death).
inline int betti_at(const Barcode& barcode, double t, int dim) {
    int count = 0;
    for (const auto& bar : barcode.intervals(dim))
        if (bar.birth <= t && t < bar.death) ++count;
    return count;
}

namespace detail {

/// Rank over GF(2) of the given rows, each a set bit list over `width` columns.
inline std::size_t gf2_rank(const std::vector<std::vector<std::size_t>>& rows, std::size_t width) {
    const std::size_t words = (width + 63) / 64;
    std::vector<std::vector<std::uint64_t>> basis(width);  // indexed by leading bit
    std::vector<bool> has(width, false);
    auto insert = [&](std::vector<std::uint64_t> bits) {
        for (std::size_t w = words; w-- > 0;) {
            while (bits[w] != 0) {
                const std::size_t lead = w * 64 + (63 - static_cast<std::size_t>(__builtin_clzll(bits[w])));
                if (!has[lead]) {
                    basis[lead] = std::move(bits);
                    has[lead] = true;
                    return true;
                }
                for (std::size_t k = 0; k < words; ++k) bits[k] ^= basis[lead][k];
            }
        }
        return false;
    };
    std::size_t rank = 0;
    for (const auto& row : rows) {
        std::vector<std::uint64_t> bits(words, 0);
        for (std::size_t c : row) bits[c / 64] ^= std::uint64_t{1} << (c % 64);
        if (insert(std::move(bits))) ++rank;
    }
    return rank;
}

}  // namespace detail

/// Betti number of the sub-complex {simplices with value <= t}, computed as
/// dim ker d_k - rank d_{k+1} by Gaussian elimination. Shares no code with
/// compute_intervals; meant for desk-scale cross-checks.
inline int betti_oracle(const Filtration& f, double t, int dim) {
    if (dim < 0 || dim > 1) throw InvalidArgument("betti_oracle supports dimensions 0 and 1");
    std::vector<const Simplex*> present[3];
    for (const auto& s : f.simplices)
        if (s.value <= t && s.dim() <= 2) present[s.dim()].push_back(&s);

    auto boundary_rank = [&](std::size_t k) -> std::size_t {
        // rank of d_k : C_k -> C_{k-1}
        if (k == 0 || present[k].empty()) return 0;
        std::vector<std::vector<std::size_t>> faces_sorted;
        for (const auto* s : present[k - 1]) faces_sorted.push_back(s->vertices);
        std::sort(faces_sorted.begin(), faces_sorted.end());
        std::vector<std::vector<std::size_t>> rows;
        for (const auto* s : present[k]) {
            std::vector<std::size_t> row;
            for (std::size_t drop = 0; drop < s->vertices.size(); ++drop) {
                std::vector<std::size_t> face;
                for (std::size_t v = 0; v < s->vertices.size(); ++v)
                    if (v != drop) face.push_back(s->vertices[v]);
                auto it = std::lower_bound(faces_sorted.begin(), faces_sorted.end(), face);
                if (it == faces_sorted.end() || *it != face) throw InvalidArgument("filtration order violated");
                row.push_back(static_cast<std::size_t>(it - faces_sorted.begin()));
            }
            rows.push_back(std::move(row));
        }
        return detail::gf2_rank(rows, faces_sorted.size());
    };

    const auto k = static_cast<std::size_t>(dim);
    const std::size_t cells = present[k].size();
    const std::size_t kernel = cells - boundary_rank(k);
    return static_cast<int>(kernel - boundary_rank(k + 1));
}

}  // namespace persistry
