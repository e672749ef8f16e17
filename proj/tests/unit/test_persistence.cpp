#include <gtest/gtest.h>

#include <random>

#include "persistry/filtration.hpp"
#include "persistry/persistence.hpp"

#include "../support/fixtures.hpp"

using namespace persistry;
using namespace persistry::testing;

namespace {

Barcode rips_barcode(const PointCloud& cloud) {
    return compute_intervals(rips_filtration(build_distance_matrix(cloud), 2), 1);
}

}  // namespace

TEST(Persistence, WalkthroughBarcode) {
    const auto b = rips_barcode(walkthrough_cloud());
    ASSERT_EQ(b.dim0.size(), 8u);
    EXPECT_EQ(b.cloud_cardinality, 8u);
    EXPECT_EQ(std::count_if(b.dim0.begin(), b.dim0.end(), [](const auto& bar) { return bar.infinite(); }), 1);
    const auto deaths = b.finite_deaths(0);
    ASSERT_EQ(deaths.size(), kWalkthroughMst.size());
    for (std::size_t i = 0; i < deaths.size(); ++i) EXPECT_NEAR(deaths[i], kWalkthroughMst[i], 1e-12);
    ASSERT_EQ(b.dim1.size(), 1u);
    EXPECT_NEAR(b.dim1[0].birth, kWalkthroughH1Birth, 1e-12);
    EXPECT_NEAR(b.dim1[0].death, kWalkthroughH1Death, 1e-12);
}

TEST(Persistence, SquareHasOneLoop) {
    const auto b = rips_barcode(PointCloud::from_rows({{0, 0}, {1, 0}, {1, 1}, {0, 1}}));
    ASSERT_EQ(b.dim1.size(), 1u);
    EXPECT_DOUBLE_EQ(b.dim1[0].birth, 1.0);
    EXPECT_DOUBLE_EQ(b.dim1[0].death, std::sqrt(2.0));
}

TEST(Persistence, TriangleHasNoLoop) {
    // all three edges appear before the triangle only in the Cech filtration
    const auto tri = PointCloud::from_rows({{0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2.0}});
    EXPECT_TRUE(rips_barcode(tri).dim1.empty());
    const auto cech = compute_intervals(cech_filtration(tri, 2, 10.0), 1);
    ASSERT_EQ(cech.dim1.size(), 1u);
    EXPECT_NEAR(cech.dim1[0].birth, 1.0, 1e-12);
    EXPECT_NEAR(cech.dim1[0].death, 2.0 / std::sqrt(3.0), 1e-12);
}

TEST(Persistence, EdgesOnlyLeavesLoopsOpen) {
    const auto f = rips_filtration(build_distance_matrix(PointCloud::from_rows({{0, 0}, {1, 0}, {1, 1}, {0, 1}})), 1);
    const auto b = compute_intervals(f, 1);
    // 6 edges, 3 merge components, 3 independent cycles never die
    EXPECT_EQ(b.dim1.size(), 3u);
    for (const auto& bar : b.dim1) EXPECT_TRUE(bar.infinite());
}

TEST(Persistence, DuplicatePointsDropZeroLengthBars) {
    const auto b = rips_barcode(PointCloud::from_rows({{0, 0}, {0, 0}, {3, 4}}));
    EXPECT_EQ(b.dim0.size(), 2u);  // the [0, 0) bar is dropped
    EXPECT_EQ(b.finite_deaths(0), (std::vector<double>{5.0}));
}

TEST(Persistence, SinglePoint) {
    const auto b = rips_barcode(PointCloud::from_rows({{1, 2}}));
    ASSERT_EQ(b.dim0.size(), 1u);
    EXPECT_TRUE(b.dim0[0].infinite());
    EXPECT_TRUE(b.dim1.empty());
}

TEST(Persistence, RejectsOtherDimensions) {
    const auto f = rips_filtration(build_distance_matrix(walkthrough_cloud()), 2);
    EXPECT_THROW(compute_intervals(f, 2), InvalidArgument);
    const Barcode b = compute_intervals(f, 0);
    EXPECT_TRUE(b.dim1.empty());
    EXPECT_THROW(b.intervals(2), InvalidArgument);
    EXPECT_THROW(betti_oracle(f, 1.0, 2), InvalidArgument);
}

TEST(BettiAt, HalfOpenIntervals) {
    Barcode b;
    b.dim1 = {{1, 1.0, 2.0}, {1, 1.5, kInfinity}};
    EXPECT_EQ(betti_at(b, 0.5, 1), 0);
    EXPECT_EQ(betti_at(b, 1.0, 1), 1);
    EXPECT_EQ(betti_at(b, 1.7, 1), 2);
    EXPECT_EQ(betti_at(b, 2.0, 1), 1);
    EXPECT_EQ(betti_at(b, 1e300, 1), 1);
}

TEST(BettiOracle, WalkthroughSweep) {
    const auto f = rips_filtration(build_distance_matrix(walkthrough_cloud()), 2);
    EXPECT_EQ(betti_oracle(f, 0.0, 0), 8);
    EXPECT_EQ(betti_oracle(f, kWalkthroughMst.back(), 0), 1);
    EXPECT_EQ(betti_oracle(f, std::nextafter(kWalkthroughH1Birth, 0.0), 1), 0);
    EXPECT_EQ(betti_oracle(f, kWalkthroughH1Birth, 1), 1);
    EXPECT_EQ(betti_oracle(f, std::nextafter(kWalkthroughH1Death, 0.0), 1), 1);
    EXPECT_EQ(betti_oracle(f, kWalkthroughH1Death, 1), 0);
}

TEST(BettiOracle, AgreesWithReductionOnRandomClouds) {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 40; ++trial) {
        const auto cloud = random_cloud(rng, 3 + trial % 6, 1 + trial % 3);
        const auto f = rips_filtration(build_distance_matrix(cloud), 2);
        const auto b = compute_intervals(f, 1);
        for (const auto& s : f.simplices)
            for (int dim = 0; dim <= 1; ++dim) EXPECT_EQ(betti_at(b, s.value, dim), betti_oracle(f, s.value, dim));
    }
}

TEST(Gf2Rank, SmallCases) {
    EXPECT_EQ(detail::gf2_rank({}, 3), 0u);
    EXPECT_EQ(detail::gf2_rank({{0, 1}, {1, 2}, {0, 2}}, 3), 2u);
    EXPECT_EQ(detail::gf2_rank({{0}, {1}, {2}}, 3), 3u);
    EXPECT_EQ(detail::gf2_rank({{70}, {70, 3}, {3}}, 100), 2u);
}
