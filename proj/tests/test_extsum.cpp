#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "hcm/errors.hpp"
#include "hcm/extsum.hpp"

using namespace hcm;

namespace {

auto instance(int universe, std::vector<std::vector<int>> subsets, std::vector<std::vector<int>> tables) -> ExtSumInstance
{
    ExtSumInstance inst;
    inst.universe = universe;
    inst.subsets = std::move(subsets);
    for (auto& t : tables)
        inst.tables.emplace_back(t.begin(), t.end());
    return inst;
}

/// Random instance whose subsets are drawn from a fixed shape.
auto shaped(std::mt19937_64& rng, int universe, const std::vector<std::vector<int>>& subsets) -> ExtSumInstance
{
    ExtSumInstance inst;
    inst.universe = universe;
    inst.subsets = subsets;
    std::uniform_int_distribution<int> value(-9, 9);
    for (const auto& s : subsets) {
        std::vector<BigInt> t(std::size_t{1} << s.size());
        for (auto& x : t)
            x = value(rng);
        inst.tables.push_back(std::move(t));
    }
    return inst;
}

auto random_subset(std::mt19937_64& rng, const std::vector<int>& pool, int max_size) -> std::vector<int>
{
    std::vector<int> out;
    for (int v : pool)
        if (static_cast<int>(out.size()) < max_size && rng() % 2)
            out.push_back(v);
    return out;
}

} // namespace

TEST(ExtSumNaive, Examples)
{
    EXPECT_EQ(eval_naive(instance(1, {{0}}, {{2, 3}})), 5);
    EXPECT_EQ(eval_naive(instance(2, {{0}, {1}}, {{1, 1}, {1, 1}})), 4);
    EXPECT_EQ(eval_naive(instance(1, {{0}, {0}}, {{1, 2}, {3, 4}})), 11);
}

TEST(ExtSumDisjoint, Examples)
{
    EXPECT_EQ(eval_disjoint(instance(2, {{0}}, {{1, 1}})), 4);
    auto inst = instance(2, {{0}, {1}}, {{2, 5}, {-3, 7}});
    EXPECT_EQ(eval_disjoint(inst), (2 + 5) * (-3 + 7));
    EXPECT_THROW(eval_disjoint(instance(2, {{0, 1}, {1}}, {{1, 1, 1, 1}, {1, 1}})), PreconditionError);
}

TEST(ExtSumDisjoint, RandomTwelve)
{
    std::mt19937_64 rng(1);
    auto inst = shaped(rng, 12, {{0, 1, 2}, {3, 4}, {5, 6, 7, 8}, {10}});
    EXPECT_EQ(eval_disjoint(inst), eval_naive(inst));
}

TEST(ExtSumK2, Examples)
{
    EXPECT_EQ(eval_k2(instance(1, {{0}, {0}}, {{1, 2}, {3, 4}})), 11);
    std::mt19937_64 rng(2);
    auto disjoint = shaped(rng, 6, {{0, 1}, {2, 3, 4}});
    EXPECT_EQ(eval_k2(disjoint), eval_disjoint(disjoint));
}

TEST(ExtSumK2, RandomSixteen)
{
    std::mt19937_64 rng(3);
    auto inst = shaped(rng, 16, {{0, 1, 2, 3, 4, 5, 6, 7, 8, 9}, {5, 6, 7, 8, 9, 10, 11, 12, 13, 14}});
    std::uint64_t iterations = 0;
    EXPECT_EQ(eval_k2(inst, &iterations), eval_naive(inst));
    EXPECT_LE(iterations, (1U << 10) + (1U << 10));
}

TEST(ExtSumK3, Examples)
{
    std::mt19937_64 rng(4);
    auto disjoint = shaped(rng, 7, {{0, 1}, {2, 3}, {4, 5}});
    EXPECT_EQ(eval_k3(disjoint), eval_disjoint(disjoint));
    auto triangle = shaped(rng, 3, {{0, 1}, {1, 2}, {0, 2}});
    EXPECT_EQ(eval_k3(triangle), eval_naive(triangle));
    auto ones = instance(3, {{0, 1}, {1, 2}, {0, 2}}, {{1, 1, 1, 1}, {1, 1, 1, 1}, {1, 1, 1, 1}});
    EXPECT_EQ(eval_k3(ones), 8);
}

TEST(ExtSum, OracleEquivalence)
{
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        const int universe = 1 + static_cast<int>(rng() % 14);
        std::vector<int> pool(static_cast<std::size_t>(universe));
        std::iota(pool.begin(), pool.end(), 0);
        std::vector<std::vector<int>> three;
        for (int i = 0; i < 3; ++i)
            three.push_back(random_subset(rng, pool, 8));
        auto inst3 = shaped(rng, universe, three);
        const BigInt expected3 = eval_naive(inst3);
        EXPECT_EQ(eval_k3(inst3), expected3);
        EXPECT_EQ(eval_auto(inst3), expected3);

        auto inst2 = shaped(rng, universe, {three[0], three[1]});
        EXPECT_EQ(eval_k2(inst2), eval_naive(inst2));

        // Disjoint pieces of a shuffled pool.
        std::shuffle(pool.begin(), pool.end(), rng);
        std::vector<std::vector<int>> parts(3);
        for (int v : pool)
            if (rng() % 4)
                parts[rng() % 3].push_back(v);
        for (auto& p : parts)
            std::sort(p.begin(), p.end());
        auto disjoint = shaped(rng, universe, parts);
        EXPECT_EQ(eval_disjoint(disjoint), eval_naive(disjoint));
    }
}

TEST(ReduceRefinement, PreservesValue)
{
    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 100; ++trial) {
        auto inst = random_extsum(10, 5, 5, -9, 9, rng());
        const BigInt expected = eval_naive(inst);
        std::vector<std::vector<std::size_t>> singletons;
        for (std::size_t i = 0; i < inst.size(); ++i)
            singletons.push_back({i});
        auto same = reduce_refinement(inst, make_refinement(inst, singletons));
        EXPECT_EQ(same.subsets, inst.subsets);
        EXPECT_EQ(same.tables, inst.tables);
        auto merged = reduce_refinement(inst, make_refinement(inst, {{0, 1, 2, 3, 4}}));
        EXPECT_EQ(merged.size(), 1U);
        EXPECT_EQ(eval_naive(merged), expected);
        auto split = reduce_refinement(inst, make_refinement(inst, {{0, 2}, {1, 3, 4}}));
        EXPECT_EQ(eval_naive(split), expected);
        EXPECT_EQ(eval_k2(split), expected);
    }
}

TEST(ReduceRefinement, Errors)
{
    auto inst = random_extsum(10, 3, 6, -2, 2, 1);
    EXPECT_THROW(reduce_refinement(inst, make_refinement(inst, {{0, 1}})), PreconditionError);
    EXPECT_THROW(reduce_refinement(inst, make_refinement(inst, {{0, 1, 2}}), 4), SizeError);
}

TEST(Hyperclique, Examples)
{
    auto k4 = Hypergraph::from_graph(complete_graph(4));
    auto inst = hyperclique_to_extsum(k4, 3);
    EXPECT_EQ(count_hypercliques(k4, 3), 4);
    EXPECT_EQ(eval_naive(inst), 6 * 4);
    auto empty = Hypergraph::from_edges(5, 2, {});
    EXPECT_EQ(eval_naive(hyperclique_to_extsum(empty, 3)), 0);
    auto single = Hypergraph::from_edges(4, 3, {{0, 1, 2}});
    EXPECT_EQ(eval_naive(hyperclique_to_extsum(single, 4)), 0);
    EXPECT_THROW(hyperclique_to_extsum(single, 3), ParameterError);
}

TEST(Hyperclique, MatchesCount)
{
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto g = random_gnp_graph(7, 0.6, seed);
        if (g.num_edges() == 0)
            continue;
        auto h = Hypergraph::from_graph(g);
        EXPECT_EQ(eval_naive(hyperclique_to_extsum(h, 3)), 6 * count_hypercliques(h, 3));
    }
}

TEST(Refinement, MiddleLayerHasNone)
{
    for (int k = 2; k <= 3; ++k) {
        auto sets = middle_layer_collection(k);
        EXPECT_EQ(sets.size(), k == 2 ? 6U : 20U);
        EXPECT_FALSE(find_refinement(2 * k, sets, k, 2 * k - 1).has_value());
        EXPECT_FALSE(find_avoiding_points(2 * k, sets, k).has_value());
    }
}

TEST(Refinement, PointsAndGroupsAgree)
{
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 3 + static_cast<int>(rng() % 6);
        const int k = 1 + static_cast<int>(rng() % 3);
        std::vector<VertexSet> sets;
        const int count = 1 + static_cast<int>(rng() % 7);
        for (int i = 0; i < count; ++i)
            sets.push_back(VertexSet::from_mask(n, rng() & ((1U << n) - 1)));
        auto groups = find_refinement(n, sets, k, n - 1);
        auto points = find_avoiding_points(n, sets, k);
        EXPECT_EQ(groups.has_value(), points.has_value());
        if (points) {
            for (const auto& s : sets)
                EXPECT_FALSE(std::all_of(points->begin(), points->end(), [&](int x) { return s.contains(x); }));
        }
        if (groups) {
            EXPECT_LE(groups->size(), static_cast<std::size_t>(k));
            for (const auto& g : *groups) {
                VertexSet u(n);
                for (auto i : g)
                    u |= sets[i];
                EXPECT_LE(u.size(), n - 1);
            }
        }
    }
}

TEST(ExtSumJson, RoundTrip)
{
    auto inst = random_extsum(8, 3, 4, -5, 5, 9);
    auto back = extsum_from_json(to_json(inst));
    EXPECT_EQ(back.subsets, inst.subsets);
    EXPECT_EQ(back.tables, inst.tables);
    EXPECT_EQ(eval_naive(back), eval_naive(inst));
}

TEST(ExtSumJson, BigValues)
{
    auto inst = instance(1, {{0}}, {{0, 0}});
    inst.tables[0][0] = BigInt(1) << 100;
    auto j = to_json(inst);
    EXPECT_EQ(eval_naive(extsum_from_json(j)), BigInt(1) << 100);
}

TEST(ExtSumValidate, Rejects)
{
    EXPECT_THROW(instance(2, {{1, 0}}, {{1, 1, 1, 1}}).validate(), PreconditionError);
    EXPECT_THROW(instance(2, {{0, 2}}, {{1, 1, 1, 1}}).validate(), PreconditionError);
    EXPECT_THROW(instance(2, {{0}}, {{1, 1, 1}}).validate(), PreconditionError);
}
