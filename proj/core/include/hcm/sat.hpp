#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hcm/cnf.hpp"
#include "hcm/containers.hpp"
#include "hcm/graph.hpp"
#include "hcm/vertex_set.hpp"

namespace hcm {

/// H_phi on the 2n literals: x_i is vertex 2(i-1), its negation 2(i-1)+1.
/// Clause (l_1 v ... v l_k) becomes the edge of the negated literals.
/// Clauses with the same literal set give one edge.
struct LiteralHypergraph {
    int num_vars = 0;
    int k = 0;
    Hypergraph h;

    static auto vertex_of(Literal l) -> int { return l > 0 ? 2 * (l - 1) : 2 * (-l - 1) + 1; }
    static auto literal_of(int v) -> Literal { return (v % 2 == 0) ? v / 2 + 1 : -(v / 2 + 1); }
};

/// k defaults to the formula width (1 for the empty formula). Throws
/// ParameterError when some clause width differs from k.
auto build_literal_hypergraph(const CnfFormula& phi, std::optional<int> k = std::nullopt) -> LiteralHypergraph;

/// I_alpha: the literals made true by alpha (indexed by variable-1).
auto assignment_literals(const std::vector<bool>& alpha) -> VertexSet;

struct Restriction {
    bool contradiction = false;
    /// Simplified clauses over the original variable ids.
    CnfFormula residual;
    /// Per variable: -1 unassigned, 0 or 1.
    std::vector<int> assignment;
    /// Variables with both literals kept, before unit propagation.
    int unassigned_by_absence = 0;
    /// Variables still unassigned after propagation.
    int unassigned = 0;
};

/// phi[V']: a dropped positive literal forces 0, a dropped negative one
/// forces 1, both dropped is a contradiction. Satisfied clauses go, false
/// literals are removed and unit clauses propagate.
auto restrict_formula(const CnfFormula& phi, const VertexSet& kept) -> Restriction;

struct SatResult {
    bool satisfiable = false;
    std::optional<std::vector<bool>> model;
    std::uint64_t nodes = 0;
};

/// Unit propagation, pure literals, branching on the most frequent variable.
auto dpll(const CnfFormula& phi) -> SatResult;

/// Truth-table oracle, num_vars <= 24.
auto brute_force_sat(const CnfFormula& phi) -> bool;

struct StructureParams {
    double D = 10.0;
    double C = 4.0;
    double epsilon = 0.3;
};

enum class StructureOutcome { Found, FoundCodegreeFails, Absent };

auto to_string(StructureOutcome o) -> std::string;

struct StructureReport {
    StructureOutcome outcome = StructureOutcome::Absent;
    /// Indices into the hypergraph edges.
    std::vector<std::size_t> edges;
    int picked_vertices = 0;
    /// |E'| / |V|.
    double density = 0.0;
    std::int64_t max_degree = 0;
    std::int64_t max_codegree = 0;
    /// (r+1) D: what the extraction guarantees for max_degree.
    double certified_degree_bound = 0.0;
    /// C D', for comparison with max_degree.
    double degree_bound = 0.0;
    double codegree_bound = 0.0;
    /// Largest degree of the residual hypergraph when the greedy stopped.
    std::int64_t residual_max_degree = 0;
};

/// Greedy extraction: while some unretired vertex has at least D residual
/// edges outside E', move D of them to E' and retire it, along with every
/// vertex whose E'-degree exceeds r D, so Delta_1(E') <= (r+1) D. E' counts
/// as a structure when |E'| >= (eps D / 2) |V|; Delta_2(E') <= C D'^(1-eps)
/// with D' = |E'|/|V| is then checked and failure reported as
/// FoundCodegreeFails.
auto extract_structure(const Hypergraph& h, const StructureParams& params) -> StructureReport;

enum class SatMode { Auto, Dpll, Containers };

struct SatConfig {
    SatMode mode = SatMode::Auto;
    int workers = 1;
    double eps_edges = 0.5;
    double M = 1.0;
    std::size_t max_containers = std::size_t{1} << 16;
};

struct SatStats {
    std::string path;
    std::optional<StructureReport> structure;
    std::size_t containers = 0;
    std::size_t containers_solved = 0;
    int largest_container = 0;
    int largest_unassigned = 0;
    std::uint64_t dpll_nodes = 0;
    /// unassigned_by_absence == |C| - n held on every non-contradictory restriction.
    bool restriction_arithmetic_ok = true;
};

struct DenseSatResult {
    bool satisfiable = false;
    std::optional<std::vector<bool>> model;
    SatStats stats;
};

/// Extracts a structure, builds containers of (V, E') with p = D^(-eps/r)
/// and runs dpll on the whole formula restricted to each container; the
/// lowest satisfiable container index wins. Auto falls back to dpll on
/// absence, a failed co-degree check or a container overflow.
auto solve_ksat_dense(const CnfFormula& phi, const StructureParams& params, const SatConfig& config = {})
    -> DenseSatResult;

auto to_json(const StructureReport& r) -> nlohmann::json;
auto to_json(const DenseSatResult& r) -> nlohmann::json;

} // namespace hcm
