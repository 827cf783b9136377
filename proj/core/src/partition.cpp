#include "hcm/partition.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <unordered_set>

#include "hcm/errors.hpp"

namespace hcm {

namespace {

constexpr double kTolerance = 1e-9;

/// Most frequent key; ties go to the smallest key.
auto most_frequent(const std::map<std::uint64_t, int>& counts) -> std::pair<std::uint64_t, int>
{
    std::pair<std::uint64_t, int> best{0, -1};
    for (auto [key, count] : counts)
        if (count > best.second)
            best = {key, count};
    return best;
}

auto union_of(int universe, const std::vector<VertexSet>& subsets, const std::vector<std::size_t>& idx) -> VertexSet
{
    VertexSet u(universe);
    for (auto i : idx)
        u |= subsets[i];
    return u;
}

auto floor_ceiling(double value) -> int
{
    return static_cast<int>(std::floor(value + kTolerance));
}

// Mask helpers so the union enumeration runs on plain words when n <= 64.
auto mask_or(std::uint64_t a, std::uint64_t b) -> std::uint64_t { return a | b; }
auto mask_or(const VertexSet& a, const VertexSet& b) -> VertexSet { return a | b; }
auto mask_size(std::uint64_t a) -> int { return std::popcount(a); }
auto mask_size(const VertexSet& a) -> int { return a.size(); }
auto mask_subset(std::uint64_t a, std::uint64_t b) -> bool { return (a & ~b) == 0; }

struct MaskHash {
    auto operator()(std::uint64_t x) const noexcept -> std::size_t { return std::hash<std::uint64_t>{}(x); }
    auto operator()(const VertexSet& s) const noexcept -> std::size_t { return s.hash(); }
};

template <typename Mask>
auto enumerate_unions_impl(const std::vector<Mask>& base, const Mask& empty, const Mask& full, int k, int ceiling, std::size_t max_out,
                           std::size_t& enumerated) -> std::vector<Mask>
{
    std::unordered_set<Mask, MaskHash> seen;
    bool saw_full = false;
    auto rec = [&](auto&& self, std::size_t start, const Mask& current, int depth) -> void {
        for (std::size_t j = start; j < base.size() && !saw_full; ++j) {
            Mask next = mask_or(current, base[j]);
            if (depth > 0 && next == current)
                continue; // base[j] adds nothing; every extension is reached without it
            if (mask_size(next) > ceiling)
                continue;
            ++enumerated;
            if (seen.insert(next).second && seen.size() > max_out)
                throw SizeError("partition-containers", "more than " + std::to_string(max_out) + " unions");
            if (next == full) {
                // Everything else is a subset of the full set.
                saw_full = true;
                return;
            }
            if (depth + 1 < k)
                self(self, j + 1, next, depth + 1);
        }
    };
    rec(rec, 0, empty, 0);
    if (saw_full)
        return {full};
    return {seen.begin(), seen.end()};
}

/// Keeps the sets with no strict superset in the list.
auto maximal_masks(std::vector<std::uint64_t> masks, int universe) -> std::vector<std::uint64_t>
{
    std::sort(masks.begin(), masks.end());
    masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
    if (universe <= 22 && masks.size() > 4096) {
        // Superset-or over the cube: above[m] marks a listed strict superset.
        const std::size_t size = std::size_t{1} << universe;
        std::vector<std::uint8_t> present(size, 0), above(size, 0);
        for (auto m : masks)
            present[m] = 1;
        std::vector<std::uint8_t> any = present;
        for (int bit = 0; bit < universe; ++bit)
            for (std::size_t m = 0; m < size; ++m)
                if (!(m >> bit & 1U))
                    any[m] |= any[m | (std::size_t{1} << bit)];
        for (std::size_t m = 0; m < size; ++m)
            for (int bit = 0; bit < universe && !above[m]; ++bit)
                if (!(m >> bit & 1U) && any[m | (std::size_t{1} << bit)])
                    above[m] = 1;
        std::vector<std::uint64_t> kept;
        for (auto m : masks)
            if (!above[m])
                kept.push_back(m);
        return kept;
    }
    std::sort(masks.begin(), masks.end(), [](auto a, auto b) { return std::popcount(a) > std::popcount(b); });
    std::vector<std::uint64_t> kept;
    for (auto m : masks)
        if (std::none_of(kept.begin(), kept.end(), [&](auto k) { return mask_subset(m, k); }))
            kept.push_back(m);
    return kept;
}

auto canonical(std::vector<VertexSet> sets) -> std::vector<VertexSet>
{
    std::sort(sets.begin(), sets.end());
    return sets;
}

} // namespace

// ---------------------------------------------------------------------------

auto venn_refinement(int universe_n, const std::vector<VertexSet>& subsets) -> VennSplit
{
    const std::size_t k = subsets.size();
    if (k == 0 || k > 63)
        throw ParameterError("venn_refinement needs 1 <= k <= 63 subsets");
    std::map<std::uint64_t, int> counts;
    for (int v = 0; v < universe_n; ++v) {
        std::uint64_t vec = 0;
        for (std::size_t i = 0; i < k; ++i)
            if (subsets[i].contains(v))
                vec |= std::uint64_t{1} << i;
        ++counts[vec];
    }
    VennSplit split;
    auto [w, freq] = most_frequent(counts);
    split.frequency = std::max(freq, 0);
    split.w.resize(k);
    for (std::size_t i = 0; i < k; ++i) {
        split.w[i] = static_cast<int>(w >> i & 1U);
        (split.w[i] ? split.a : split.b).push_back(i);
    }
    split.intersection_a = VertexSet::full(universe_n);
    for (auto i : split.a)
        split.intersection_a &= subsets[i];
    split.union_b = union_of(universe_n, subsets, split.b);
    return split;
}

auto matching_refinement(const Graph& g, const std::vector<VertexSet>& subsets) -> MatchingRefinement
{
    const std::size_t k = subsets.size();
    if (k == 0 || k > 63)
        throw ParameterError("matching_refinement needs 1 <= k <= 63 subsets");
    MatchingRefinement out;
    out.max_degree = g.max_degree();
    VertexSet matched(g.num_vertices());
    for (auto [u, v] : g.edges()) {
        bool inside = std::any_of(subsets.begin(), subsets.end(),
                                  [&](const VertexSet& s) { return s.contains(u) && s.contains(v); });
        if (inside)
            continue;
        ++out.uncovered_edges;
        if (!matched.contains(u) && !matched.contains(v)) {
            matched.insert(u);
            matched.insert(v);
            out.matching.emplace_back(u, v);
        }
    }
    if (out.matching.empty())
        throw RefinementUnavailable("every edge lies inside some subset; no refinement from a matching");

    std::map<std::uint64_t, int> counts;
    for (auto [e0, e1] : out.matching) {
        std::uint64_t vec = 0;
        for (std::size_t i = 0; i < k; ++i)
            if (subsets[i].contains(e0))
                vec |= std::uint64_t{1} << i;
        ++counts[vec];
    }
    auto [w, freq] = most_frequent(counts);
    out.omitted = freq;
    std::vector<std::size_t> a, b;
    for (std::size_t i = 0; i < k; ++i)
        ((w >> i & 1U) ? b : a).push_back(i);
    const int n = g.num_vertices();
    for (auto* members : {&a, &b}) {
        if (members->empty())
            continue;
        RefinementResult::Part part{*members, union_of(n, subsets, *members)};
        out.refinement.gamma = std::max(out.refinement.gamma, n > 0 ? static_cast<double>(part.set_union.size()) / n : 0.0);
        out.refinement.parts.push_back(std::move(part));
    }
    return out;
}

// ---------------------------------------------------------------------------

auto PartitionContainerCollection::covers(const VertexSet& s) const -> bool
{
    return std::any_of(containers.begin(), containers.end(), [&](const VertexSet& c) { return s.is_subset_of(c); });
}

auto enumerate_unions(const std::vector<VertexSet>& base, int universe, int k, int ceiling, std::size_t max_out,
                      std::size_t* enumerated) -> std::vector<VertexSet>
{
    std::size_t count = 0;
    std::vector<VertexSet> out;
    if (universe <= 64) {
        std::vector<std::uint64_t> masks;
        masks.reserve(base.size());
        for (const auto& b : base)
            masks.push_back(b.low_word());
        const std::uint64_t full = VertexSet::full(universe).low_word();
        auto result = enumerate_unions_impl(masks, std::uint64_t{0}, full, k, ceiling, max_out, count);
        result = maximal_masks(std::move(result), universe);
        for (auto m : result)
            out.push_back(VertexSet::from_mask(universe, m));
    } else {
        auto result = enumerate_unions_impl(base, VertexSet(universe), VertexSet::full(universe), k, ceiling, max_out, count);
        out = prune_dominated(std::move(result));
    }
    if (enumerated)
        *enumerated = count;
    return canonical(std::move(out));
}

namespace {

void finish_collection(PartitionContainerCollection& pc, const PartitionOptions& opts)
{
    const int n = pc.universe;
    pc.size_ceiling = pc.ceiling == CeilingPolicy::Relaxed ? n : floor_ceiling((1.0 - pc.epsilon) * n);
    if (pc.base.containers.size() > opts.max_base_containers)
        throw SizeError("partition-containers", "base collection has " + std::to_string(pc.base.containers.size()) +
                                                    " containers, above the ceiling of " +
                                                    std::to_string(opts.max_base_containers));
    // Without a size ceiling a union of dominated containers sits inside the
    // union of their dominators, so only maximal base containers are needed.
    std::vector<VertexSet> base = pc.ceiling == CeilingPolicy::Relaxed ? prune_dominated(pc.base.containers)
                                                                      : pc.base.containers;
    pc.containers = enumerate_unions(base, n, pc.k, pc.size_ceiling, opts.max_containers, &pc.unions_enumerated);
    for (const auto& c : pc.containers)
        pc.max_container_size = std::max(pc.max_container_size, c.size());
}

void validate_k(int k)
{
    if (k < 1 || k > 8)
        throw ParameterError("k must lie in 1..8");
}

} // namespace

auto build_partition_collection_regular(const Graph& g, int k, const PartitionOptions& opts)
    -> PartitionContainerCollection
{
    validate_k(k);
    if (!g.is_regular())
        throw ParameterError("graph is not regular; use build_partition_collection_almost_regular");
    PartitionContainerCollection pc;
    pc.universe = g.num_vertices();
    pc.k = k;
    pc.epsilon = std::ldexp(1.0, -(k + 2));
    pc.degree_threshold = k * std::ldexp(1.0, 2 * k + 3);
    pc.ceiling = opts.ceiling;
    const double d = g.average_degree();
    if ((d < pc.degree_threshold && !opts.force) || g.num_edges() == 0) {
        pc.low_degree = true;
        return pc;
    }
    BuildOptions base_opts;
    base_opts.force = true; // d >= d0 already exceeds the base low-degree threshold
    pc.base = build_regular_collection(g, std::ldexp(1.0, -(k + 1)), base_opts);
    finish_collection(pc, opts);
    return pc;
}

auto build_partition_collection_almost_regular(const Graph& g, int k, double C, const PartitionOptions& opts)
    -> PartitionContainerCollection
{
    validate_k(k);
    if (!(C >= 1.0))
        throw ParameterError("degree ratio C must be >= 1");
    const double d = g.average_degree();
    if (g.max_degree() > C * d + kTolerance)
        throw ParameterError("max degree " + std::to_string(g.max_degree()) + " exceeds C * d = " +
                             std::to_string(C * d));
    PartitionContainerCollection pc;
    pc.universe = g.num_vertices();
    pc.k = k;
    pc.epsilon = 1.0 / (C * std::ldexp(1.0, k + 2));
    pc.ceiling = opts.ceiling;
    const double sparsity = 1.0 / (4.0 * k);
    pc.degree_threshold = opts.min_degree.value_or(2.0 / (sparsity * sparsity));
    if ((d < pc.degree_threshold && !opts.force) || g.num_edges() == 0) {
        pc.low_degree = true;
        return pc;
    }
    BuildOptions base_opts;
    base_opts.force = true;
    pc.base = build_almost_regular_collection(g, C, sparsity, base_opts);
    finish_collection(pc, opts);
    return pc;
}

auto has_covered_split(const PartitionContainerCollection& pc, const std::vector<VertexSet>& sets) -> bool
{
    const std::size_t k = sets.size();
    if (k > 20)
        throw ParameterError("has_covered_split supports at most 20 sets");
    const int n = pc.universe;
    auto covered = [&](const VertexSet& s) { return s.empty() || pc.covers(s); };
    // A and its complement give the same split; fix the first set in A.
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << k); ++mask) {
        if (k > 0 && !(mask & 1U))
            continue;
        VertexSet a(n), b(n);
        for (std::size_t i = 0; i < k; ++i)
            (mask >> i & 1U ? a : b) |= sets[i];
        if (covered(a) && covered(b))
            return true;
    }
    return k == 0;
}

auto partition_report(const PartitionContainerCollection& pc) -> nlohmann::json
{
    return {
        {"n", pc.universe},
        {"k", pc.k},
        {"epsilon", pc.epsilon},
        {"size_ceiling", pc.size_ceiling},
        {"ceiling_policy", pc.ceiling == CeilingPolicy::Strict ? "strict" : "relaxed"},
        {"degree_threshold", pc.degree_threshold},
        {"low_degree", pc.low_degree},
        {"base", collection_report(pc.base)},
        {"unions_enumerated", pc.unions_enumerated},
        {"partition_container_count", pc.containers.size()},
        {"max_container_size", pc.max_container_size},
        {"worst_fraction", pc.universe > 0 ? static_cast<double>(pc.max_container_size) / pc.universe : 0.0},
    };
}

} // namespace hcm
