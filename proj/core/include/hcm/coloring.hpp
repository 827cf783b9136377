#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hcm/bigint.hpp"
#include "hcm/graph.hpp"
#include "hcm/vertex_set.hpp"

namespace hcm {

/// i(G[S]) for every S inside a domain D. counts is indexed by local masks:
/// bit j stands for vertices[j], the j-th smallest vertex of D.
struct IsCountTable {
    VertexSet domain;
    std::vector<int> vertices;
    std::vector<std::uint32_t> counts;

    /// i(G[s]) for s a subset of the domain.
    auto count(const VertexSet& s) const -> std::uint32_t;
    auto local_mask(const VertexSet& s) const -> std::uint64_t;
};

/// i(G[S]) = i(G[S - v]) + i(G[S - N[v]]) with v the lowest vertex of S,
/// over subsets in increasing order. |domain| <= max_domain (at most 30).
auto count_is_dp(const Graph& g, const VertexSet& domain, int max_domain = 30) -> IsCountTable;

/// F(G) = sum over V' of (-1)^(n - |V'|) i(G[V'])^k: the number of ordered
/// k-tuples of independent sets covering V. n <= max_n.
auto inclusion_exclusion_F(const Graph& g, int k, int max_n = 26) -> BigInt;

enum class ExtSumAlgo { Auto, Naive, Direct };

/// F(G, C_1..C_k) = sum over V' of (-1)^(n - |V'|) prod_j i(G[V' n C_j]),
/// the number of ordered covers (I_1..I_k) with I_j inside C_j. Zero when
/// the containers do not cover V. Auto evaluates the equivalent
/// Extensions-Sum instance after merging identical containers; Naive sums
/// that instance directly; Direct sums the formula above.
auto constrained_F(const Graph& g, const std::vector<VertexSet>& containers, ExtSumAlgo algo = ExtSumAlgo::Auto)
    -> BigInt;

enum class ColoringMode { Auto, Baseline, Containers };

struct ColoringConfig {
    ColoringMode mode = ColoringMode::Auto;
    bool certificate = false;
    /// Build partition containers below the degree threshold (containers mode only).
    bool force = true;
    int workers = 1;
    std::size_t max_pairs = std::size_t{1} << 24;
    int max_n = 26;
};

struct ColoringStats {
    std::string path;
    std::size_t base_containers = 0;
    std::size_t partition_containers = 0;
    std::size_t pairs_tested = 0;
    int largest_table_log2 = 0;
    bool relaxed_ceiling = false;
};

struct ColoringResult {
    bool colorable = false;
    /// Color in 0..k-1 per vertex when requested and colorable.
    std::optional<std::vector<int>> certificate;
    ColoringStats stats;
};

/// Exact k-coloring decision. Baseline: F(G) > 0. Containers: partition
/// containers, then every pair (C_a, C_b) covering V and every split size
/// s in 1..k-1 is tested with the two-part evaluation.
auto solve_kcoloring(const Graph& g, int k, const ColoringConfig& config = {}) -> ColoringResult;

auto is_proper_coloring(const Graph& g, const std::vector<int>& colors, int k) -> bool;

auto to_json(const ColoringResult& r) -> nlohmann::json;

} // namespace hcm
