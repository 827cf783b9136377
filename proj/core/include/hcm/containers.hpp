#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "hcm/graph.hpp"
#include "hcm/vertex_set.hpp"

namespace hcm {

/// Parameters of the single-graph fingerprint/container pair: epsilon in
/// (0, 1/2) and the degree d the thresholds are measured against.
struct ContainerParams {
    double epsilon = 0.25;
    double degree = 0.0;

    /// q = 1/(epsilon d); q n caps the fingerprint size.
    auto q() const -> double { return 1.0 / (epsilon * degree); }

    /// Takes d as the average degree of g. Throws ParameterError unless
    /// 0 < epsilon < 1/2 and d > 0.
    static auto for_graph(const Graph& g, double epsilon) -> ContainerParams;
};

/// Parameters of the r-uniform engine. The co-degree conditions
/// Delta_i(H) <= C p^(i-1) |E|/|V| are checked against (p, C).
struct HypergraphContainerParams {
    double p = 0.5;
    double C = 1.0;
    int r = 2;
    /// The greedy stops once every available vertex has weighted
    /// constraint degree below eps_edges * r |E|/|V|.
    double eps_edges = 0.25;
    /// Fingerprints are capped at ceil(M p n) vertices.
    double M = 4.0;
    /// Optional hard ceiling on container size; a build exceeding it fails.
    std::optional<int> size_ceiling;
};

enum class ContainerSource { RegularGraph, AlmostRegularGraph, Hypergraph, HalvingFallback };

auto to_string(ContainerSource s) -> std::string;

struct BuildOptions {
    /// Build containers even when the degree is too low for the size
    /// guarantees to apply (the low-degree flag is then never raised).
    bool force = false;
    /// Skip the co-degree precondition of the hypergraph engine.
    bool skip_condition_check = false;
    /// Resource ceiling on the number of distinct containers.
    std::size_t max_containers = std::size_t{1} << 22;
    /// Keep the fingerprint -> container map.
    bool keep_fingerprints = true;
};

/// A deduplicated family of containers in canonical order, with the
/// fingerprints that produced them and the bounds they were checked against.
struct ContainerCollection {
    int universe = 0;
    ContainerSource source = ContainerSource::RegularGraph;
    std::variant<ContainerParams, HypergraphContainerParams> params;
    /// Set when the input degree is below the point where containers pay
    /// off; solvers switch to their direct path. `containers` is then empty.
    bool low_degree = false;
    std::vector<VertexSet> containers;
    /// (fingerprint, index into containers).
    std::vector<std::pair<VertexSet, std::size_t>> fingerprints;
    int fingerprint_cap = 0;
    std::size_t fingerprints_enumerated = 0;
    int max_fingerprint_size = 0;
    int max_container_size = 0;
    /// The size bound declared by the construction, in vertices (for the
    /// regular build (1/(2-eps) + q) n); measured, not assumed, otherwise.
    double declared_size_bound = 0.0;

    auto size() const noexcept -> std::size_t { return containers.size(); }
    /// True iff s is a subset of some container.
    auto covers(const VertexSet& s) const -> bool;
};

// -- Regular graphs ---------------------------------------------------------

/// f(I): scan I in id order; v joins F iff |N(v) \ N(F)| >= eps d at that
/// moment. Throws PreconditionError if I is not independent.
auto fingerprint(const Graph& g, const VertexSet& independent, const ContainerParams& params) -> VertexSet;

/// B(F) = { v not in F u N(F) : |N(v) n N(F)| >= (1 - eps) d }.
auto blocked_vertices(const Graph& g, const VertexSet& fingerprint, const ContainerParams& params) -> VertexSet;

/// g(F) = F u B(F).
auto container_of(const Graph& g, const VertexSet& fingerprint, const ContainerParams& params) -> VertexSet;

/// Every fixed-point fingerprint F (F = f(F)) is expanded with g. Raises
/// the low-degree flag when d <= 2/eps^2 unless opts.force is set.
/// An edgeless graph also gets the flag. Throws ParameterError for
/// non-regular input or epsilon outside (0, 1/2).
auto build_regular_collection(const Graph& g, double epsilon, const BuildOptions& opts = {}) -> ContainerCollection;

/// The exponential fallback family of all floor(n/2)-subsets. Analysis
/// only; n is limited to 24.
auto halving_fallback_collection(int n) -> ContainerCollection;

// -- Almost-regular graphs and hypergraphs ----------------------------------

/// Runs the r = 2 engine with p = 2/(C d). Containers have fewer than
/// sparsity * d * n / 2 induced edges. The low-degree flag is raised when
/// d <= 2/sparsity^2 unless forced. Throws ParameterError when
/// max degree > C * average degree.
auto build_almost_regular_collection(const Graph& g, double C, double sparsity, const BuildOptions& opts = {})
    -> ContainerCollection;

struct CodegreeRow {
    int i = 0;
    std::int64_t measured = 0;
    double bound = 0.0;
    bool pass = false;
};

struct CodegreeReport {
    std::vector<CodegreeRow> rows;
    bool all_pass = false;
    std::string note;
};

auto check_codegree_conditions(const Hypergraph& h, const HypergraphContainerParams& params) -> CodegreeReport;

/// Fingerprint of an independent set under the degree-greedy engine.
auto hypergraph_fingerprint(const Hypergraph& h, const VertexSet& independent, const HypergraphContainerParams& params)
    -> VertexSet;

/// Replays the engine with "v in I" answered by "v in F".
auto hypergraph_container(const Hypergraph& h, const VertexSet& fingerprint, const HypergraphContainerParams& params)
    -> VertexSet;

/// Enumerates every leaf of the engine's decision tree. Throws
/// CodegreeError when a co-degree condition fails (unless skipped),
/// ParameterError for r < 2, p outside (0,1) or an edgeless input, and
/// SizeError when a container exceeds params.size_ceiling.
auto build_hypergraph_collection(const Hypergraph& h, const HypergraphContainerParams& params,
                                 const BuildOptions& opts = {}) -> ContainerCollection;

// -- Utilities ----------------------------------------------------------------

/// Number of edges of g inside c.
auto container_sparsity(const Graph& g, const VertexSet& c) -> std::int64_t;

/// Drops every container that is a subset of another one. Coverage of any
/// family of sets is unchanged.
auto prune_dominated(std::vector<VertexSet> sets) -> std::vector<VertexSet>;

/// JSON report: parameters, container count, size histogram and, when a
/// graph is supplied, the induced-edge histogram.
auto collection_report(const ContainerCollection& c, const Graph* g = nullptr) -> nlohmann::json;

} // namespace hcm
