// Randomized invariants across modules, seeded so failures replay.

#include <gtest/gtest.h>

#include <random>

#include "persistry/analytics.hpp"
#include "persistry/filtration.hpp"
#include "persistry/persistence.hpp"
#include "persistry/roster.hpp"
#include "persistry/serialize.hpp"

#include "../support/fixtures.hpp"

using namespace persistry;
using namespace persistry::testing;

namespace {

Barcode rips_barcode(const PointCloud& cloud) {
    return compute_intervals(rips_filtration(build_distance_matrix(cloud), 2), 1);
}

}  // namespace

TEST(Properties, ScalingScalesEveryEndpoint) {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 25; ++trial) {
        const auto cloud = random_cloud(rng, 3 + trial % 9, 1 + trial % 5);
        const double c = 4.0;  // power of two: scaling is exact in floating point
        const auto a = rips_barcode(cloud);
        const auto b = rips_barcode(cloud.scaled(c));
        for (int dim = 0; dim <= 1; ++dim) {
            ASSERT_EQ(a.intervals(dim).size(), b.intervals(dim).size());
            for (std::size_t i = 0; i < a.intervals(dim).size(); ++i) {
                EXPECT_EQ(b.intervals(dim)[i].birth, c * a.intervals(dim)[i].birth);
                EXPECT_EQ(b.intervals(dim)[i].death, c * a.intervals(dim)[i].death);
            }
        }
        EXPECT_EQ(sparsity(cloud.scaled(c)), c * sparsity(cloud));
    }
}

TEST(Properties, Dim0DeathsAreTheMst) {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 40; ++trial) {
        const auto cloud = random_cloud(rng, 2 + trial % 19, 1 + trial % 12);
        const auto b = compute_intervals(rips_filtration(build_distance_matrix(cloud), 1), 0);
        EXPECT_EQ(b.finite_deaths(0), prim_mst_lengths(cloud));
        EXPECT_EQ(b.finite_deaths(0), degree_sparsity(cloud).values);
    }
}

TEST(Properties, OracleEquivalenceRipsAndCech) {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 30; ++trial) {
        const auto cloud = random_cloud(rng, 3 + trial % 5, 1 + trial % 3);
        for (const auto& f : {rips_filtration(build_distance_matrix(cloud), 2), cech_filtration(cloud, 2, 1e9)}) {
            const auto b = compute_intervals(f, 1);
            for (const auto& s : f.simplices)
                for (int dim = 0; dim <= 1; ++dim) {
                    EXPECT_EQ(betti_at(b, s.value, dim), betti_oracle(f, s.value, dim));
                    const double before = std::nextafter(s.value, 0.0);
                    EXPECT_EQ(betti_at(b, before, dim), betti_oracle(f, before, dim));
                }
        }
    }
}

TEST(Properties, PermutationInvariantBarcode) {
    std::mt19937_64 rng(44);
    for (int trial = 0; trial < 20; ++trial) {
        const auto cloud = random_cloud(rng, 4 + trial % 6, 2 + trial % 3);
        std::vector<std::size_t> order(cloud.size());
        std::iota(order.begin(), order.end(), 0);
        std::shuffle(order.begin(), order.end(), rng);
        std::vector<std::string> labels;
        std::vector<double> coords;
        for (std::size_t i : order) {
            labels.push_back(cloud.label(i));
            coords.insert(coords.end(), cloud.point(i).begin(), cloud.point(i).end());
        }
        const auto shuffled = PointCloud(cloud.dim(), labels, coords);
        EXPECT_EQ(dump(to_json(rips_barcode(cloud))), dump(to_json(rips_barcode(shuffled))));
    }
}

TEST(Properties, BarcodeJsonRoundTrip) {
    std::mt19937_64 rng(45);
    for (int trial = 0; trial < 10; ++trial) {
        const auto b = rips_barcode(random_cloud(rng, 6, 2));
        const auto back = barcode_from_json(Json::parse(dump(to_json(b))), b.cloud_cardinality);
        EXPECT_EQ(back.dim0, b.dim0);
        EXPECT_EQ(back.dim1, b.dim1);
    }
}

TEST(Properties, RosterCsvRoundTrip) {
    std::mt19937_64 rng(46);
    std::uniform_real_distribution<double> u(0.0, 500.0);
    for (int trial = 0; trial < 20; ++trial) {
        TeamRoster r;
        for (int p = 0; p < 2 + trial % 10; ++p) {
            PlayerRecord rec;
            rec.name = p % 3 == 0 ? "Player, No. " + std::to_string(p) : "Player \"" + std::to_string(p) + "\"";
            for (double& v : rec.stats) v = trial % 2 ? std::round(u(rng)) : u(rng);
            r.players.push_back(rec);
        }
        const auto back = parse_roster_csv(serialize_roster_csv(r));
        ASSERT_EQ(back.players.size(), r.players.size());
        for (std::size_t i = 0; i < r.players.size(); ++i) {
            EXPECT_EQ(back.players[i].name, r.players[i].name);
            EXPECT_EQ(back.players[i].stats, r.players[i].stats);
        }
    }
}

TEST(Properties, CompareIsAntisymmetric) {
    std::mt19937_64 rng(47);
    std::uniform_int_distribution<int> count(0, 3);
    std::uniform_real_distribution<double> len(0.0, 10.0);
    for (int trial = 0; trial < 200; ++trial) {
        TeamSummary a, b;
        a.team = b.team = "t";
        a.h1_count = count(rng);
        b.h1_count = count(rng);
        a.h1_total_length = trial % 3 ? len(rng) : 1.0;
        b.h1_total_length = trial % 3 ? len(rng) : 1.0;
        a.mean_bar_length = len(rng);
        b.mean_bar_length = trial % 5 ? len(rng) : a.mean_bar_length;
        const auto ab = compare(a, b).verdict;
        const auto ba = compare(b, a).verdict;
        const auto mirrored = ab == Verdict::Improved   ? Verdict::Worsened
                              : ab == Verdict::Worsened ? Verdict::Improved
                                                        : Verdict::Neutral;
        EXPECT_EQ(ba, mirrored);
    }
}

TEST(Properties, IdenticalStatSwapIsNeutral) {
    const auto data = load_dataset(data_root(), "2013-2014");
    SummaryConfig config;
    config.tunneling = {2, 10, 1};
    for (const auto& [slug, roster] : data.teams) {
        const auto cloud = to_point_cloud(roster);
        const auto before = summarize(slug, rips_barcode(cloud), cloud, config);
        for (std::size_t i = 0; i < roster.players.size(); i += 5) {
            PlayerRecord twin = roster.players[i];
            twin.name += " II";
            const auto traded = apply_trade(roster, {slug, roster.players[i].name, twin, "elsewhere"});
            const auto tcloud = to_point_cloud(traded);
            const auto after = summarize(slug, rips_barcode(tcloud), tcloud, config);
            EXPECT_EQ(dump(to_json(rips_barcode(tcloud))), dump(to_json(rips_barcode(cloud))));
            EXPECT_EQ(compare(before, after).verdict, Verdict::Neutral);
        }
    }
}
