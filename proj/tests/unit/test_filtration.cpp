#include <gtest/gtest.h>

#include <random>

#include "persistry/filtration.hpp"

#include "../support/fixtures.hpp"

using namespace persistry;
using namespace persistry::testing;

namespace {

std::size_t choose(std::size_t n, std::size_t k) {
    std::size_t r = 1;
    for (std::size_t i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

}  // namespace

TEST(Rips, CompleteUpToTriangles) {
    const auto cloud = walkthrough_cloud();
    const auto f = rips_filtration(build_distance_matrix(cloud), 2);
    EXPECT_EQ(f.count(0), 8u);
    EXPECT_EQ(f.count(1), choose(8, 2));
    EXPECT_EQ(f.count(2), choose(8, 3));
    EXPECT_EQ(f.kind, FiltrationKind::Rips);
    EXPECT_EQ(f.vertex_count, 8u);
}

TEST(Rips, ValuesAreLongestEdges) {
    const auto cloud = PointCloud::from_rows({{0, 0}, {3, 0}, {0, 4}});
    const auto f = rips_filtration(build_distance_matrix(cloud), 2);
    ASSERT_EQ(f.simplices.size(), 7u);
    EXPECT_EQ(f.simplices.back().vertices, (std::vector<std::size_t>{0, 1, 2}));
    EXPECT_DOUBLE_EQ(f.simplices.back().value, 5.0);
    // vertices, then edges 3, 4, 5, then the triangle tied at 5 after its edge
    EXPECT_EQ(f.simplices[3].value, 3.0);
    EXPECT_EQ(f.simplices[4].value, 4.0);
    EXPECT_EQ(f.simplices[5].dim(), 1u);
    EXPECT_EQ(f.simplices[6].dim(), 2u);
}

TEST(Rips, MaxValueTruncates) {
    const auto cloud = PointCloud::from_rows({{0, 0}, {3, 0}, {0, 4}});
    const auto f = rips_filtration(build_distance_matrix(cloud), 2, 4.5);
    EXPECT_EQ(f.count(1), 2u);
    EXPECT_EQ(f.count(2), 0u);
    const auto edges_only = rips_filtration(build_distance_matrix(cloud), 1);
    EXPECT_EQ(edges_only.count(2), 0u);
}

TEST(Rips, RejectsBadArguments) {
    const auto dm = build_distance_matrix(walkthrough_cloud());
    EXPECT_THROW(rips_filtration(dm, 3), InvalidArgument);
    EXPECT_THROW(rips_filtration(dm, 2, 0.0), InvalidArgument);
    EXPECT_THROW(rips_filtration(dm, 0), InvalidArgument);
}

TEST(Rips, OrderIsMonotoneAndClosed) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const auto cloud = random_cloud(rng, 3 + trial % 8, 1 + trial % 4);
        const auto f = rips_filtration(build_distance_matrix(cloud), 2);
        for (std::size_t i = 1; i < f.simplices.size(); ++i)
            EXPECT_FALSE(filtration_less(f.simplices[i], f.simplices[i - 1]));
        EXPECT_NO_THROW(face_indices(f));
    }
}

TEST(FaceIndices, DetectsOrderViolation) {
    Filtration f;
    f.vertex_count = 2;
    f.simplices = {{{0}, 0.0}, {{0, 1}, 1.0}, {{1}, 0.0}};
    EXPECT_THROW(face_indices(f), InvalidArgument);
}

TEST(MinEnclosingBall, Cases) {
    EXPECT_EQ(min_enclosing_ball({{1, 2}}).radius, 0.0);
    EXPECT_DOUBLE_EQ(min_enclosing_ball({{0, 0}, {2, 0}}).radius, 1.0);
    // obtuse: diametral ball of the long side
    const auto obtuse = min_enclosing_ball({{0, 0}, {4, 0}, {2, 0.5}});
    EXPECT_DOUBLE_EQ(obtuse.radius, 2.0);
    // equilateral side 1: circumradius 1/sqrt(3)
    const auto eq = min_enclosing_ball({{0, 0, 0}, {1, 0, 0}, {0.5, std::sqrt(3.0) / 2.0, 0}});
    EXPECT_NEAR(eq.radius, 1.0 / std::sqrt(3.0), 1e-12);
    EXPECT_NEAR(eq.center[2], 0.0, 1e-12);
    // collinear
    EXPECT_DOUBLE_EQ(min_enclosing_ball({{0, 0}, {1, 0}, {3, 0}}).radius, 1.5);
    EXPECT_THROW(min_enclosing_ball({}), InvalidArgument);
    EXPECT_THROW(min_enclosing_ball({{0}, {1, 2}}), InvalidArgument);
}

TEST(Cech, DiameterConvention) {
    // equilateral triangle, side 1: Rips fills at 1, Cech at 2/sqrt(3)
    const auto cloud = PointCloud::from_rows({{0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2.0}});
    const auto f = cech_filtration(cloud, 2, 10.0);
    EXPECT_EQ(f.kind, FiltrationKind::Cech);
    ASSERT_EQ(f.count(2), 1u);
    EXPECT_NEAR(f.simplices.back().value, 2.0 / std::sqrt(3.0), 1e-12);
    for (const auto& s : f.simplices) {
        if (s.dim() == 1) {
            EXPECT_NEAR(s.value, 1.0, 1e-12);
        }
    }
}

TEST(Cech, NeverBelowRips) {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 10; ++trial) {
        const auto cloud = random_cloud(rng, 6, 3);
        const auto dm = build_distance_matrix(cloud);
        const auto rips = rips_filtration(dm, 2, 1e9);
        const auto cech = cech_filtration(cloud, 2, 1e9);
        ASSERT_EQ(rips.simplices.size(), cech.simplices.size());
        auto value_of = [](const Filtration& f, const std::vector<std::size_t>& v) {
            for (const auto& s : f.simplices)
                if (s.vertices == v) return s.value;
            return -1.0;
        };
        for (const auto& s : cech.simplices) EXPECT_GE(s.value, value_of(rips, s.vertices));
    }
}
