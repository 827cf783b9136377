#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

#include "hcm/containers.hpp"
#include "hcm/graph.hpp"
#include "hcm/vertex_set.hpp"

namespace hcm {

/// A partition of a subset collection's indices into parts, with the exact
/// union of every part. gamma = max |union| / n.
struct RefinementResult {
    struct Part {
        std::vector<std::size_t> members;
        VertexSet set_union;
    };
    std::vector<Part> parts;
    double gamma = 0.0;
};

/// The two-way split picked by the membership-vector pigeonhole.
struct VennSplit {
    /// w[i] = 1 iff subset i belongs to A.
    std::vector<int> w;
    std::vector<std::size_t> a;
    std::vector<std::size_t> b;
    /// Number of universe elements whose membership vector equals w.
    int frequency = 0;
    /// Intersection over A (the universe when A is empty).
    VertexSet intersection_a;
    /// Union over B (empty when B is empty).
    VertexSet union_b;
};

/// Each element is mapped to its membership vector; the most frequent
/// vector w is chosen (ties: smallest w read as a number with w_1 as its
/// lowest bit). A = {i : w_i = 1}, B = {i : w_i = 0}.
auto venn_refinement(int universe_n, const std::vector<VertexSet>& subsets) -> VennSplit;

struct MatchingRefinement {
    RefinementResult refinement;
    /// Matched pairs (e0, e1) with e0 < e1.
    std::vector<Edge> matching;
    /// |E'|: edges of g contained in no subset.
    std::int64_t uncovered_edges = 0;
    int max_degree = 0;
    /// Both parts avoid at least this many vertices (|M| / 2^k rounded up).
    int omitted = 0;
};

/// E' = edges inside no subset, M = greedy maximal matching of E' in
/// sorted edge order. xi(e)_i = 1 iff e0 is in subset i; the most frequent
/// xi vector w gives A = {w_i = 0} (avoids every e0) and B = {w_i = 1}
/// (avoids every e1). Empty parts are left out. Throws
/// RefinementUnavailable when M is empty.
auto matching_refinement(const Graph& g, const std::vector<VertexSet>& subsets) -> MatchingRefinement;

/// Size ceiling applied to the unions.
enum class CeilingPolicy {
    /// (1 - eps) n with the constants of the construction.
    Strict,
    /// n: every union of at most k base containers is kept. Below the
    /// degree threshold this is what keeps downstream decisions exact.
    Relaxed,
};

struct PartitionOptions {
    bool force = false;
    CeilingPolicy ceiling = CeilingPolicy::Strict;
    std::size_t max_containers = std::size_t{1} << 21;
    std::size_t max_base_containers = std::size_t{1} << 16;
    /// Degree threshold for the almost-regular builder; defaults to the
    /// base collection's own low-degree rule.
    std::optional<double> min_degree;
};

struct PartitionContainerCollection {
    int universe = 0;
    int k = 0;
    /// Size slack: every container has at most (1 - epsilon) n vertices
    /// under the strict ceiling.
    double epsilon = 0.0;
    int size_ceiling = 0;
    CeilingPolicy ceiling = CeilingPolicy::Strict;
    double degree_threshold = 0.0;
    bool low_degree = false;
    ContainerCollection base;
    std::vector<VertexSet> containers;
    std::size_t unions_enumerated = 0;
    int max_container_size = 0;

    auto size() const noexcept -> std::size_t { return containers.size(); }
    auto covers(const VertexSet& s) const -> bool;
};

/// eps = 2^-(k+2), d0 = k 2^(2k+3); base eps' = 2^-(k+1). Below d0 the
/// low-degree flag is returned unless forced.
auto build_partition_collection_regular(const Graph& g, int k, const PartitionOptions& opts = {})
    -> PartitionContainerCollection;

/// Base sparsity 1/(4k), ceiling (1 - 1/(C 2^(k+2))) n. Throws
/// ParameterError when max degree > C * average degree.
auto build_partition_collection_almost_regular(const Graph& g, int k, double C, const PartitionOptions& opts = {})
    -> PartitionContainerCollection;

/// Union enumeration shared by both builders: every union of at most k
/// base containers with at most `ceiling` vertices, deduplicated and in
/// canonical order.
auto enumerate_unions(const std::vector<VertexSet>& base, int universe, int k, int ceiling, std::size_t max_out,
                      std::size_t* enumerated = nullptr) -> std::vector<VertexSet>;

/// True iff the sets admit a split [k] = A u B with both part unions
/// inside some container of the collection.
auto has_covered_split(const PartitionContainerCollection& pc, const std::vector<VertexSet>& sets) -> bool;

auto partition_report(const PartitionContainerCollection& pc) -> nlohmann::json;

} // namespace hcm
