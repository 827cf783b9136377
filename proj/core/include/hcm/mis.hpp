#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hcm/graph.hpp"
#include "hcm/vertex_set.hpp"

namespace hcm {

struct MisStats {
    std::string path;
    std::uint64_t nodes = 0;
    std::size_t containers_total = 0;
    std::size_t containers_used = 0;
    /// Vertex count of the largest induced subgraph handed to the base solver.
    int largest_subproblem = 0;
};

struct MisResult {
    VertexSet best;
    int size = 0;
    std::int64_t weight = 0;
    MisStats stats;
};

/// Branch and bound: degree-0 vertices are taken outright, otherwise the
/// max-degree candidate is included (dropping N[v]) or excluded. A greedy
/// set seeds the bound. Weights default to 1 and must be non-negative.
auto mis_base(const Graph& g, const std::vector<std::int64_t>* weights = nullptr) -> MisResult;

enum class MisMode { Auto, Base, Containers };

struct MisParams {
    MisMode mode = MisMode::Auto;
    double epsilon = 0.3;
    /// Degree-ratio constant for irregular graphs; max/average degree when unset.
    std::optional<double> C;
    /// Build containers below the degree threshold (containers mode).
    bool force = true;
    int workers = 1;
};

/// Solves G[C] for every container and keeps the best; ties go to the
/// lexicographically smallest set. Falls back to mis_base when the builder
/// reports low degree.
auto mis_containers(const Graph& g, const MisParams& params = {}, const std::vector<std::int64_t>* weights = nullptr)
    -> MisResult;

auto to_json(const MisResult& r) -> nlohmann::json;

} // namespace hcm
