#pragma once

// Shared fixtures and brute-force reference implementations for the suites.
// Nothing here calls into the code under test except to build inputs.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "persistry/point_cloud.hpp"
#include "persistry/roster.hpp"

#ifndef PERSISTRY_DATA_DIR
#error "PERSISTRY_DATA_DIR must point at the dataset root"
#endif

namespace persistry::testing {

inline std::filesystem::path data_root() { return PERSISTRY_DATA_DIR; }

inline std::filesystem::path season_dir() { return data_root() / "2013-2014"; }

// The eight-point planar walkthrough cloud.
inline PointCloud walkthrough_cloud() {
    return PointCloud(2, {"A", "B", "C", "D", "E", "F", "G", "H"},
                      {49, 77, 78, 65, 90, 32, 74, 8, 41, 6, 15, 23, 9, 48, 18, 62});
}

// Goldens from tests/oracles/compute_goldens.py (networkx MST, GF(2) rank sweep).
inline constexpr double kWalkthroughSparsity = 16.64331697709324;
inline const std::vector<double> kWalkthroughMst{16.64331697709324, 25.709920264364882, 28.844410203711913,
                                            31.064449134018133, 31.38470965295043, 33.06055050963308,
                                            34.438350715445125};
inline constexpr double kWalkthroughH1Birth = 35.11409973215888;  // sqrt(1233)
inline constexpr double kWalkthroughH1Death = 69.6419413859206;   // sqrt(4850)

inline constexpr double kSharksSparsity = 66.12079929946401;
inline constexpr double kSharksTopLine = 244.03893132039403;
inline constexpr double kSharksMeanBar = 136.9176719967274;
inline constexpr double kOilersSparsity = 25.199206336708304;
inline constexpr double kOilersTopLine = 131.31260411704582;
inline constexpr double kOilersMeanBar = 73.65538153950307;
inline constexpr double kLeagueRho = 0.29610678531701895;

// Seeded cloud with coordinates uniform in [0, scale).
inline PointCloud random_cloud(std::mt19937_64& rng, std::size_t n, std::size_t dim, double scale = 100.0) {
    std::uniform_real_distribution<double> u(0.0, scale);
    std::vector<double> coords(n * dim);
    for (double& v : coords) v = u(rng);
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back("p" + std::to_string(i));
    return PointCloud(dim, std::move(labels), std::move(coords));
}

// O(n^2) Prim: MST edge lengths, sorted.
inline std::vector<double> prim_mst_lengths(const PointCloud& cloud) {
    const std::size_t n = cloud.size();
    std::vector<bool> in(n, false);
    std::vector<double> best(n, std::numeric_limits<double>::infinity());
    std::vector<double> out;
    best[0] = 0.0;
    for (std::size_t step = 0; step < n; ++step) {
        std::size_t u = n;
        for (std::size_t v = 0; v < n; ++v)
            if (!in[v] && (u == n || best[v] < best[u])) u = v;
        in[u] = true;
        if (step > 0) out.push_back(best[u]);
        for (std::size_t v = 0; v < n; ++v) {
            if (in[v]) continue;
            double s = 0.0;
            for (std::size_t k = 0; k < cloud.dim(); ++k) {
                const double d = cloud.point(u)[k] - cloud.point(v)[k];
                s += d * d;
            }
            best[v] = std::min(best[v], std::sqrt(s));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Spearman as Pearson correlation of average ranks; makes no tie-free assumption.
inline std::vector<double> average_ranks(const std::vector<double>& xs) {
    std::vector<double> r(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double below = 0.0, equal = 0.0;
        for (double y : xs) {
            if (y < xs[i]) below += 1.0;
            if (y == xs[i]) equal += 1.0;
        }
        r[i] = below + (equal + 1.0) / 2.0;
    }
    return r;
}

inline double brute_spearman(const std::vector<double>& a, const std::vector<double>& b) {
    const auto ra = average_ranks(a);
    const auto rb = average_ranks(b);
    const double n = static_cast<double>(ra.size());
    double ma = 0.0, mb = 0.0;
    for (std::size_t i = 0; i < ra.size(); ++i) {
        ma += ra[i] / n;
        mb += rb[i] / n;
    }
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t i = 0; i < ra.size(); ++i) {
        sab += (ra[i] - ma) * (rb[i] - mb);
        saa += (ra[i] - ma) * (ra[i] - ma);
        sbb += (rb[i] - mb) * (rb[i] - mb);
    }
    return sab / std::sqrt(saa * sbb);
}

// Synthetic league where Corsi rank i finishes in standing[i-1].
inline League synthetic_league(const std::vector<int>& standings) {
    League league;
    const int n = static_cast<int>(standings.size());
    for (int i = 0; i < n; ++i)
        league.rows.push_back({"Team " + std::to_string(i + 1), i + 1, 5000 - 10 * i, 80, standings[i]});
    return league;
}

inline PlayerRecord player(std::string name, std::array<double, kStatCount> stats) {
    return PlayerRecord{std::move(name), stats};
}

// Six players on a hexagon of radius 50 around (100, 100) in the (G, A)
// plane plus one far outlier; the other ten stats are constant. The hexagon
// carries a dim-1 class born at the side length (50) and killed only once
// the long diagonals (100) appear, which is far above the noise floor.
inline TeamRoster hexagon_team() {
    TeamRoster t;
    t.team_name = "Hexagon";
    const double pi = std::acos(-1.0);
    for (int k = 0; k < 6; ++k) {
        std::array<double, kStatCount> s;
        s.fill(10.0);
        s[0] = 100.0 + 50.0 * std::cos(pi * k / 3.0);
        s[1] = 100.0 + 50.0 * std::sin(pi * k / 3.0);
        t.players.push_back(player("Hex " + std::to_string(k), s));
    }
    std::array<double, kStatCount> outlier;
    outlier.fill(10.0);
    outlier[0] = 400.0;
    outlier[1] = 100.0;
    t.players.push_back(player("Outlier", outlier));
    return t;
}

// The other fixture team: a centre player sitting in the hexagon's hole and
// a copy of the outlier's statline under a different name.
inline TeamRoster centre_team() {
    TeamRoster t;
    t.team_name = "Centre";
    std::array<double, kStatCount> centre;
    centre.fill(10.0);
    centre[0] = 100.0;
    centre[1] = 100.0;
    t.players.push_back(player("Centre Man", centre));
    std::array<double, kStatCount> twin;
    twin.fill(10.0);
    twin[0] = 400.0;
    twin[1] = 100.0;
    t.players.push_back(player("Outlier Twin", twin));
    return t;
}

}  // namespace persistry::testing
