#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

#include "hcm/bigint.hpp"
#include "hcm/graph.hpp"
#include "hcm/partition.hpp"
#include "hcm/vertex_set.hpp"

namespace hcm {

/// Sum over all assignments alpha of X of prod_i f_i(alpha restricted to X_i).
///
/// Variables are 0..universe-1. subsets[i] is sorted; tables[i] has
/// 2^|X_i| entries, bit j of an index being the value of subsets[i][j].
struct ExtSumInstance {
    int universe = 0;
    std::vector<std::vector<int>> subsets;
    std::vector<std::vector<BigInt>> tables;

    auto size() const noexcept -> std::size_t { return subsets.size(); }
    auto subset_set(std::size_t i) const -> VertexSet;

    /// Throws PreconditionError on unsorted or out-of-range subsets and
    /// wrongly sized tables, SizeError when a table exceeds max_entries.
    void validate(std::size_t max_entries = kDefaultMaxEntries) const;

    static constexpr std::size_t kDefaultMaxEntries = std::size_t{1} << 24;
};

/// Direct summation over all 2^|X| assignments. |X| <= max_universe.
auto eval_naive(const ExtSumInstance& inst, int max_universe = 24) -> BigInt;

/// 2^|X \ u X_i| prod_i sum f_i. Subsets must be pairwise disjoint.
auto eval_disjoint(const ExtSumInstance& inst) -> BigInt;

/// Two subsets: tables are summed over their private variables for every
/// assignment of the overlap. `iterations` receives the number of table
/// entries visited, 2^|X_1| + 2^|X_2|.
auto eval_k2(const ExtSumInstance& inst, std::uint64_t* iterations = nullptr) -> BigInt;

/// Three subsets: for every assignment of the common part, each table is
/// summed onto the two pairwise-overlap axes it touches and the weighted
/// triangles are added up through one matrix product.
auto eval_k3(const ExtSumInstance& inst) -> BigInt;

/// Picks disjoint, k2, k3 or naive evaluation from the shape of the instance.
auto eval_auto(const ExtSumInstance& inst) -> BigInt;

/// One merged subset per part: the union of its members, with the pointwise
/// product of their extensions as table. Throws PreconditionError unless
/// the parts partition the subset indices, SizeError when a merged table
/// exceeds max_entries.
auto reduce_refinement(const ExtSumInstance& inst, const RefinementResult& ref,
                       std::size_t max_entries = ExtSumInstance::kDefaultMaxEntries) -> ExtSumInstance;

/// RefinementResult over the given index groups, unions computed from the instance.
auto make_refinement(const ExtSumInstance& inst, const std::vector<std::vector<std::size_t>>& groups)
    -> RefinementResult;

/// k blocks of ceil(log2 n) variables, one subset per r-subset of blocks with
/// a 0/1 table that is 1 iff the decoded vertices form an edge. Codes >= n
/// decode to nothing and give 0. The sum equals k! times the number of
/// k-vertex sets spanning only edges. Throws ParameterError unless k > r.
auto hyperclique_to_extsum(const Hypergraph& h, int k) -> ExtSumInstance;

/// Number of k-sets all of whose r-subsets are edges (brute force).
auto count_hypercliques(const Hypergraph& h, int k) -> std::int64_t;

// -- Refinement search ---------------------------------------------------------

/// A partition of the subsets into at most `parts` groups with every group
/// union of size <= ceiling, by depth-first search; nullopt when none exists.
auto find_refinement(int universe, const std::vector<VertexSet>& subsets, int parts, int ceiling)
    -> std::optional<std::vector<std::vector<std::size_t>>>;

/// k points such that no subset contains all of them. Such points exist iff
/// the collection has a k-part refinement with no part covering X: subsets
/// missing x_i go to part i.
auto find_avoiding_points(int universe, const std::vector<VertexSet>& subsets, int k) -> std::optional<std::vector<int>>;

/// All C(2k, k) subsets of size k of [2k].
auto middle_layer_collection(int k) -> std::vector<VertexSet>;

auto to_json(const ExtSumInstance& inst) -> nlohmann::json;
auto extsum_from_json(const nlohmann::json& j) -> ExtSumInstance;

/// Random instance: `count` subsets, each of size <= max_subset, entries in
/// [lo, hi].
auto random_extsum(int universe, int count, int max_subset, int lo, int hi, std::uint64_t seed) -> ExtSumInstance;

} // namespace hcm
