#include <gtest/gtest.h>

#include <random>

#include "hcm/coloring.hpp"
#include "hcm/errors.hpp"
#include "oracles.hpp"

using namespace hcm;

namespace {

auto k2() -> Graph { return Graph::from_edges(2, std::vector<Edge>{{0, 1}}); }

auto random_containers(std::mt19937_64& rng, const Graph& g, int k) -> std::vector<VertexSet>
{
    const int n = g.num_vertices();
    std::vector<VertexSet> out;
    for (int j = 0; j < k; ++j)
        out.push_back(VertexSet::from_mask(n, rng() | rng()));
    return out;
}

} // namespace

TEST(CountIsDp, Examples)
{
    EXPECT_EQ(count_is_dp(empty_graph(3), VertexSet::full(3)).count(VertexSet::full(3)), 8U);
    EXPECT_EQ(count_is_dp(complete_graph(3), VertexSet::full(3)).count(VertexSet::full(3)), 4U);
    EXPECT_EQ(count_is_dp(cycle_graph(4), VertexSet::full(4)).count(VertexSet::full(4)), 7U);
}

TEST(CountIsDp, MatchesEnumeration)
{
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 12);
        auto g = random_gnp_graph(n, 0.35, rng());
        auto domain = VertexSet::from_mask(n, rng());
        auto table = count_is_dp(g, domain);
        for (int probe = 0; probe < 20; ++probe) {
            auto s = VertexSet::from_mask(n, rng()) & domain;
            EXPECT_EQ(table.count(s), oracle::independent_sets(g, oracle::to_mask(s)).size());
        }
    }
}

TEST(InclusionExclusion, Examples)
{
    EXPECT_EQ(inclusion_exclusion_F(k2(), 2), 2);
    EXPECT_EQ(inclusion_exclusion_F(complete_graph(3), 2), 0);
    EXPECT_EQ(inclusion_exclusion_F(empty_graph(1), 1), 1);
}

TEST(InclusionExclusion, MatchesOrderedCovers)
{
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 9);
        auto g = random_gnp_graph(n, 0.4, rng());
        const int k = 1 + static_cast<int>(rng() % 3);
        EXPECT_EQ(inclusion_exclusion_F(g, k), oracle::ordered_covers(g, k));
    }
}

TEST(ConstrainedF, Examples)
{
    auto g = k2();
    auto c0 = VertexSet::from_mask(2, 0b01), c1 = VertexSet::from_mask(2, 0b10);
    for (auto algo : {ExtSumAlgo::Auto, ExtSumAlgo::Naive, ExtSumAlgo::Direct}) {
        EXPECT_EQ(constrained_F(g, {c0, c1}, algo), 1);
        auto c4 = cycle_graph(4);
        EXPECT_EQ(constrained_F(c4, {VertexSet::from_mask(4, 0b0101), VertexSet::from_mask(4, 0b1010)}, algo), 1);
        EXPECT_EQ(constrained_F(g, {c0, c0}, algo), 0);
    }
}

TEST(ConstrainedF, AllAlgorithmsMatchOracle)
{
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 150; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 9);
        auto g = random_gnp_graph(n, 0.35, rng());
        const int k = 1 + static_cast<int>(rng() % 3);
        auto containers = random_containers(rng, g, k);
        if (rng() % 3 == 0 && k > 1)
            containers[1] = containers[0];
        std::vector<oracle::Mask> masks;
        for (const auto& c : containers)
            masks.push_back(oracle::to_mask(c));
        const std::int64_t expected = oracle::ordered_covers(g, masks);
        EXPECT_EQ(constrained_F(g, containers, ExtSumAlgo::Direct), expected);
        EXPECT_EQ(constrained_F(g, containers, ExtSumAlgo::Naive), expected);
        EXPECT_EQ(constrained_F(g, containers, ExtSumAlgo::Auto), expected);
    }
}

TEST(ConstrainedF, FullContainersGiveF)
{
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto g = random_gnp_graph(8, 0.4, seed);
        for (int k = 1; k <= 3; ++k) {
            std::vector<VertexSet> full(static_cast<std::size_t>(k), VertexSet::full(8));
            EXPECT_EQ(constrained_F(g, full), inclusion_exclusion_F(g, k));
        }
    }
}

TEST(KColoring, TrivialCases)
{
    EXPECT_TRUE(solve_kcoloring(empty_graph(0), 0).colorable);
    EXPECT_FALSE(solve_kcoloring(empty_graph(2), 0).colorable);
    EXPECT_TRUE(solve_kcoloring(empty_graph(5), 1).colorable);
    EXPECT_TRUE(solve_kcoloring(complete_graph(4), 4).colorable);
    EXPECT_FALSE(solve_kcoloring(complete_graph(4), 3).colorable);
    EXPECT_FALSE(solve_kcoloring(complete_graph(3), 2).colorable);
}

TEST(KColoring, PetersenAllPaths)
{
    auto g = petersen_graph();
    for (auto mode : {ColoringMode::Auto, ColoringMode::Baseline, ColoringMode::Containers}) {
        ColoringConfig cfg;
        cfg.mode = mode;
        EXPECT_FALSE(solve_kcoloring(g, 2, cfg).colorable);
        EXPECT_TRUE(solve_kcoloring(g, 3, cfg).colorable);
    }
}

TEST(KColoring, PathsAgreeWithOracle)
{
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 12; ++trial) {
        const int n = 6 + 2 * static_cast<int>(rng() % 3);
        auto g = trial % 2 ? random_regular_graph(n, 4, rng()) : random_gnp_graph(n, 0.5, rng());
        for (int k = 2; k <= 3; ++k) {
            const bool expected = oracle::colorable(g, k);
            ColoringConfig base;
            base.mode = ColoringMode::Baseline;
            ColoringConfig cont;
            cont.mode = ColoringMode::Containers;
            EXPECT_EQ(solve_kcoloring(g, k, base).colorable, expected);
            EXPECT_EQ(solve_kcoloring(g, k, cont).colorable, expected) << "trial " << trial << " k " << k;
        }
    }
}

TEST(KColoring, CertificatesAreProper)
{
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        auto g = random_gnp_graph(9, 0.4, rng());
        ColoringConfig cfg;
        cfg.certificate = true;
        cfg.mode = trial % 2 ? ColoringMode::Containers : ColoringMode::Baseline;
        for (int k = 2; k <= 4; ++k) {
            auto r = solve_kcoloring(g, k, cfg);
            ASSERT_EQ(r.colorable, r.certificate.has_value());
            if (r.certificate) {
                EXPECT_TRUE(is_proper_coloring(g, *r.certificate, k));
            }
        }
    }
}

TEST(KColoring, ContainersModeLimits)
{
    ColoringConfig cfg;
    cfg.mode = ColoringMode::Containers;
    EXPECT_THROW(solve_kcoloring(cycle_graph(12), 9, cfg), ParameterError);
    EXPECT_TRUE(solve_kcoloring(cycle_graph(12), 9).colorable);
}

TEST(KColoring, ReportFields)
{
    ColoringConfig cfg;
    cfg.mode = ColoringMode::Containers;
    auto r = solve_kcoloring(petersen_graph(), 3, cfg);
    auto j = to_json(r);
    EXPECT_TRUE(j.at("decision").get<bool>());
    EXPECT_TRUE(j.contains("stats"));
    EXPECT_GT(r.stats.partition_containers, 0U);
}

TEST(ProperColoring, Checks)
{
    EXPECT_TRUE(is_proper_coloring(k2(), {0, 1}, 2));
    EXPECT_FALSE(is_proper_coloring(k2(), {1, 1}, 2));
    EXPECT_FALSE(is_proper_coloring(k2(), {0, 2}, 2));
    EXPECT_FALSE(is_proper_coloring(k2(), {0}, 2));
}
