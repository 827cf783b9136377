#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "hcm/vertex_set.hpp"

namespace hcm {

using Edge = std::pair<int, int>;

/// Simple undirected graph on vertices 0..n-1. Immutable after construction.
///
/// Adjacency is kept twice: as sorted neighbor lists for iteration and as
/// bitsets for the set algebra the container constructions need.
class Graph {
public:
    Graph() = default;

    /// Validates and builds. Self-loops, duplicate edges and out-of-range
    /// endpoints raise PreconditionError.
    static auto from_edges(int n, std::span<const Edge> edges) -> Graph;

    auto num_vertices() const noexcept -> int { return n_; }
    auto num_edges() const noexcept -> std::int64_t { return m_; }

    auto neighbors(int v) const -> std::span<const int> { return adjacency_[static_cast<std::size_t>(v)]; }
    auto neighborhood(int v) const -> const VertexSet& { return neighbor_sets_[static_cast<std::size_t>(v)]; }
    auto degree(int v) const -> int { return static_cast<int>(adjacency_[static_cast<std::size_t>(v)].size()); }
    auto has_edge(int u, int v) const -> bool { return neighbor_sets_[static_cast<std::size_t>(u)].contains(v); }

    auto max_degree() const noexcept -> int { return max_degree_; }
    auto min_degree() const noexcept -> int { return min_degree_; }
    /// 2m/n, or 0 for the empty graph.
    auto average_degree() const noexcept -> double;
    auto is_regular() const noexcept -> bool { return n_ == 0 || min_degree_ == max_degree_; }

    /// Edges as (u, v) with u < v, in lexicographic order.
    auto edges() const -> std::vector<Edge>;

    /// N(S): union of the neighborhoods of the members of s.
    auto neighborhood_of(const VertexSet& s) const -> VertexSet;
    auto is_independent(const VertexSet& s) const -> bool;
    /// Number of edges with both endpoints in s.
    auto induced_edge_count(const VertexSet& s) const -> std::int64_t;

    auto full_set() const -> VertexSet { return VertexSet::full(n_); }
    auto empty_set() const -> VertexSet { return VertexSet(n_); }

private:
    int n_ = 0;
    std::int64_t m_ = 0;
    int max_degree_ = 0;
    int min_degree_ = 0;
    std::vector<std::vector<int>> adjacency_;
    std::vector<VertexSet> neighbor_sets_;
};

/// G[S] relabelled to 0..|S|-1, together with the map back to the ids of G.
struct InducedSubgraph {
    Graph graph;
    std::vector<int> to_parent;
};

auto induced_subgraph(const Graph& g, const VertexSet& s) -> InducedSubgraph;

/// r-uniform hypergraph on vertices 0..n-1; edges are sorted, distinct r-sets.
class Hypergraph {
public:
    Hypergraph() = default;

    static auto from_edges(int n, int r, std::vector<std::vector<int>> edges) -> Hypergraph;
    static auto from_graph(const Graph& g) -> Hypergraph;

    auto num_vertices() const noexcept -> int { return n_; }
    auto uniformity() const noexcept -> int { return r_; }
    auto num_edges() const noexcept -> std::int64_t { return static_cast<std::int64_t>(edges_.size()); }
    auto edges() const -> const std::vector<std::vector<int>>& { return edges_; }
    auto edge(std::size_t i) const -> std::span<const int> { return edges_[i]; }
    /// Indices of the edges containing v.
    auto incident(int v) const -> std::span<const std::size_t> { return incidence_[static_cast<std::size_t>(v)]; }
    auto degree(int v) const -> int { return static_cast<int>(incidence_[static_cast<std::size_t>(v)].size()); }

    /// deg(T): number of edges containing every vertex of t.
    auto codegree(std::span<const int> t) const -> std::int64_t;

    /// Set spanning no full edge.
    auto is_independent(const VertexSet& s) const -> bool;
    auto induced_edge_count(const VertexSet& s) const -> std::int64_t;

    /// Same vertex set, only the listed edges.
    auto edge_subhypergraph(std::span<const std::size_t> edge_ids) const -> Hypergraph;

private:
    int n_ = 0;
    int r_ = 0;
    std::vector<std::vector<int>> edges_;
    std::vector<std::vector<std::size_t>> incidence_;
};

/// Delta_i(H): the maximum co-degree over i-subsets, computed by counting the
/// i-subsets of every edge. Throws ParameterError unless 1 <= i <= r.
auto max_codegree(const Hypergraph& h, int i) -> std::int64_t;

// DIMACS edge format ("p edge n m", "e u v", 1-indexed; "c" comment lines).
auto parse_dimacs_graph(std::string_view text) -> Graph;
auto parse_dimacs_graph(std::istream& in) -> Graph;
auto to_dimacs(const Graph& g) -> std::string;

auto to_json(const Graph& g) -> nlohmann::json;
auto graph_from_json(const nlohmann::json& j) -> Graph;
auto to_json(const Hypergraph& h) -> nlohmann::json;
auto hypergraph_from_json(const nlohmann::json& j) -> Hypergraph;
auto to_json(const VertexSet& s) -> nlohmann::json;

// Instance generators. All are deterministic in their seed.
auto random_regular_graph(int n, int d, std::uint64_t seed) -> Graph;
auto random_gnp_graph(int n, double p, std::uint64_t seed) -> Graph;
auto random_uniform_hypergraph(int n, int r, int m, std::uint64_t seed) -> Hypergraph;
auto cycle_graph(int n) -> Graph;
auto complete_graph(int n) -> Graph;
auto empty_graph(int n) -> Graph;
auto petersen_graph() -> Graph;

} // namespace hcm
