#include "hcm/coloring.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <map>
#include <numeric>

#include "hcm/containers.hpp"
#include "hcm/errors.hpp"
#include "hcm/extsum.hpp"
#include "hcm/parallel.hpp"
#include "hcm/partition.hpp"

namespace hcm {

namespace {

__extension__ using i128 = __int128;
__extension__ using u128 = unsigned __int128;

auto int128_to_bigint(i128 x) -> BigInt
{
    const bool negative = x < 0;
    u128 mag = negative ? static_cast<u128>(-(x + 1)) + 1 : static_cast<u128>(x);
    BigInt out = static_cast<std::uint64_t>(mag >> 64);
    out <<= 64;
    out += static_cast<std::uint64_t>(mag);
    return negative ? BigInt(-out) : out;
}

/// Sum over V' of (-1)^(n-|V'|) prod_j term_j(V'), with term_j a count
/// table lookup; int128 when the magnitude provably fits.
template <typename Term>
auto signed_subset_sum(int n, int factors, Term&& term) -> BigInt
{
    const std::uint64_t limit = std::uint64_t{1} << n;
    // |term| <= 2^n, so each product is below 2^(n * factors), the sum below 2^(n * (factors + 1)).
    if (static_cast<long long>(n) * (factors + 1) <= 120) {
        i128 total = 0;
        for (std::uint64_t s = 0; s < limit; ++s) {
            i128 prod = 1;
            for (int j = 0; j < factors && prod != 0; ++j)
                prod *= term(j, s);
            total += ((n - std::popcount(s)) & 1) ? -prod : prod;
        }
        return int128_to_bigint(total);
    }
    BigInt total = 0;
    BigInt prod;
    for (std::uint64_t s = 0; s < limit; ++s) {
        prod = 1;
        for (int j = 0; j < factors && prod != 0; ++j)
            prod *= term(j, s);
        if ((n - std::popcount(s)) & 1)
            total -= prod;
        else
            total += prod;
    }
    return total;
}

auto gather_bits(std::uint64_t s, const std::vector<int>& positions) -> std::uint64_t
{
    std::uint64_t out = 0;
    for (std::size_t j = 0; j < positions.size(); ++j)
        out |= ((s >> positions[j]) & 1U) << j;
    return out;
}

auto covers_all(const Graph& g, const std::vector<VertexSet>& containers) -> bool
{
    VertexSet u = g.empty_set();
    for (const auto& c : containers)
        u |= c;
    return u.size() == g.num_vertices();
}

/// Distinct containers and, for each input position, its index among them.
auto group_identical(const std::vector<VertexSet>& containers)
    -> std::pair<std::vector<VertexSet>, std::vector<std::size_t>>
{
    std::vector<VertexSet> distinct;
    std::vector<std::size_t> index;
    for (const auto& c : containers) {
        auto it = std::find(distinct.begin(), distinct.end(), c);
        index.push_back(static_cast<std::size_t>(it - distinct.begin()));
        if (it == distinct.end())
            distinct.push_back(c);
    }
    return {distinct, index};
}

auto constrained_direct(const Graph& g, const std::vector<VertexSet>& containers) -> BigInt
{
    const int n = g.num_vertices();
    if (n > 26)
        throw SizeError("coloring", "direct constrained count limited to n <= 26");
    auto [distinct, index] = group_identical(containers);
    std::vector<IsCountTable> tables;
    for (const auto& c : distinct)
        tables.push_back(count_is_dp(g, c));
    return signed_subset_sum(n, static_cast<int>(containers.size()), [&](int j, std::uint64_t s) -> std::int64_t {
        const auto& t = tables[index[static_cast<std::size_t>(j)]];
        return t.counts[gather_bits(s, t.vertices)];
    });
}

auto constrained_instance(const Graph& g, const std::vector<VertexSet>& containers) -> ExtSumInstance
{
    auto [distinct, index] = group_identical(containers);
    std::vector<IsCountTable> tables;
    for (const auto& c : distinct)
        tables.push_back(count_is_dp(g, c));
    ExtSumInstance inst;
    inst.universe = g.num_vertices();
    VertexSet seen = g.empty_set();
    for (std::size_t j = 0; j < containers.size(); ++j) {
        const auto& t = tables[index[j]];
        // The sign tracks |V'| once: through the first container holding each vertex.
        const std::uint64_t fresh = t.local_mask(containers[j] - seen);
        seen |= containers[j];
        std::vector<BigInt> table(t.counts.size());
        for (std::uint64_t m = 0; m < table.size(); ++m) {
            const std::int64_t value = t.counts[m];
            table[m] = (std::popcount(m & fresh) & 1) ? -value : value;
        }
        inst.subsets.push_back(t.vertices);
        inst.tables.push_back(std::move(table));
    }
    return inst;
}

} // namespace

auto IsCountTable::local_mask(const VertexSet& s) const -> std::uint64_t
{
    std::uint64_t m = 0;
    for (std::size_t j = 0; j < vertices.size(); ++j)
        if (s.contains(vertices[j]))
            m |= std::uint64_t{1} << j;
    return m;
}

auto IsCountTable::count(const VertexSet& s) const -> std::uint32_t
{
    if (!s.is_subset_of(domain))
        throw PreconditionError("set is not inside the table domain");
    return counts[local_mask(s)];
}

auto count_is_dp(const Graph& g, const VertexSet& domain, int max_domain) -> IsCountTable
{
    if (domain.size() > std::min(max_domain, 30))
        throw SizeError("coloring", "independent-set table over " + std::to_string(domain.size()) +
                                        " vertices exceeds the ceiling of " + std::to_string(std::min(max_domain, 30)));
    IsCountTable t;
    t.domain = domain;
    t.vertices = domain.to_vector();
    const std::size_t m = t.vertices.size();
    std::vector<std::uint64_t> nbr(m);
    for (std::size_t j = 0; j < m; ++j)
        nbr[j] = t.local_mask(g.neighborhood(t.vertices[j]));
    t.counts.assign(std::size_t{1} << m, 0);
    t.counts[0] = 1;
    for (std::uint64_t s = 1; s < t.counts.size(); ++s) {
        const int v = std::countr_zero(s);
        const std::uint64_t rest = s & (s - 1);
        t.counts[s] = t.counts[rest] + t.counts[rest & ~nbr[static_cast<std::size_t>(v)]];
    }
    return t;
}

auto inclusion_exclusion_F(const Graph& g, int k, int max_n) -> BigInt
{
    const int n = g.num_vertices();
    if (k < 0)
        throw ParameterError("k must be non-negative");
    if (n > std::min(max_n, 30))
        throw SizeError("coloring", "inclusion-exclusion limited to n <= " + std::to_string(std::min(max_n, 30)));
    const auto table = count_is_dp(g, g.full_set(), 30);
    return signed_subset_sum(n, k, [&](int, std::uint64_t s) -> std::int64_t { return table.counts[s]; });
}

auto constrained_F(const Graph& g, const std::vector<VertexSet>& containers, ExtSumAlgo algo) -> BigInt
{
    for (const auto& c : containers)
        if (c.universe() != g.num_vertices())
            throw PreconditionError("container universe does not match the graph");
    if (!covers_all(g, containers))
        return 0;
    if (algo == ExtSumAlgo::Direct)
        return constrained_direct(g, containers);
    const ExtSumInstance inst = constrained_instance(g, containers);
    BigInt value;
    if (algo == ExtSumAlgo::Naive) {
        value = eval_naive(inst, 26);
    } else {
        auto [distinct, index] = group_identical(containers);
        std::vector<std::vector<std::size_t>> groups(distinct.size());
        for (std::size_t j = 0; j < index.size(); ++j)
            groups[index[j]].push_back(j);
        value = eval_auto(reduce_refinement(inst, make_refinement(inst, groups)));
    }
    // The tables carry (-1)^|V'|; the count needs (-1)^(n - |V'|).
    return (g.num_vertices() & 1) ? BigInt(-value) : value;
}

auto is_proper_coloring(const Graph& g, const std::vector<int>& colors, int k) -> bool
{
    if (static_cast<int>(colors.size()) != g.num_vertices())
        return false;
    for (int c : colors)
        if (c < 0 || c >= k)
            return false;
    for (auto [u, v] : g.edges())
        if (colors[static_cast<std::size_t>(u)] == colors[static_cast<std::size_t>(v)])
            return false;
    return true;
}

namespace {

/// Self-reduction: confine each vertex to one color in turn, keeping the
/// constrained count positive.
auto extract_coloring(const Graph& g, std::vector<VertexSet> containers) -> std::vector<int>
{
    const int n = g.num_vertices();
    const auto k = containers.size();
    std::vector<int> colors(static_cast<std::size_t>(n), -1);
    for (int v = 0; v < n; ++v) {
        for (std::size_t c = 0; c < k; ++c) {
            if (!containers[c].contains(v))
                continue;
            auto trial = containers;
            for (std::size_t j = 0; j < k; ++j)
                if (j != c)
                    trial[j].erase(v);
            if (constrained_F(g, trial, n <= 26 ? ExtSumAlgo::Direct : ExtSumAlgo::Auto) > 0) {
                containers = std::move(trial);
                colors[static_cast<std::size_t>(v)] = static_cast<int>(c);
                break;
            }
        }
        if (colors[static_cast<std::size_t>(v)] < 0)
            throw PreconditionError("certificate extraction started from a non-positive count");
    }
    return colors;
}

auto build_partition(const Graph& g, int k, bool force, bool relaxed) -> PartitionContainerCollection
{
    PartitionOptions opts;
    opts.force = force;
    opts.ceiling = relaxed ? CeilingPolicy::Relaxed : CeilingPolicy::Strict;
    if (g.is_regular())
        return build_partition_collection_regular(g, k, opts);
    const double C = std::max(1.0, g.max_degree() / g.average_degree());
    return build_partition_collection_almost_regular(g, k, C, opts);
}

auto degree_threshold(const Graph& g, int k) -> double
{
    // Peek at the threshold without building anything.
    PartitionOptions opts;
    if (g.is_regular())
        return build_partition_collection_regular(g, k, opts).degree_threshold;
    const double C = std::max(1.0, g.max_degree() / g.average_degree());
    return build_partition_collection_almost_regular(g, k, C, opts).degree_threshold;
}

} // namespace

auto solve_kcoloring(const Graph& g, int k, const ColoringConfig& config) -> ColoringResult
{
    if (k < 0)
        throw ParameterError("k must be non-negative");
    const int n = g.num_vertices();
    ColoringResult result;
    auto trivial = [&](bool colorable, std::vector<int> colors) {
        result.colorable = colorable;
        result.stats.path = "trivial";
        if (colorable && config.certificate)
            result.certificate = std::move(colors);
        return result;
    };
    if (n == 0)
        return trivial(true, {});
    if (k == 0)
        return trivial(false, {});
    if (g.num_edges() == 0)
        return trivial(true, std::vector<int>(static_cast<std::size_t>(n), 0));
    if (k >= n) {
        std::vector<int> colors(static_cast<std::size_t>(n));
        std::iota(colors.begin(), colors.end(), 0);
        return trivial(true, std::move(colors));
    }
    if (k > 8 && config.mode == ColoringMode::Containers)
        throw ParameterError("containers path supports k <= 8");

    auto baseline = [&] {
        result.stats.path = "baseline";
        result.stats.largest_table_log2 = n;
        result.colorable = inclusion_exclusion_F(g, k, config.max_n) > 0;
        if (result.colorable && config.certificate)
            result.certificate = extract_coloring(g, std::vector<VertexSet>(static_cast<std::size_t>(k), g.full_set()));
        return result;
    };

    if (config.mode == ColoringMode::Baseline || k > 8)
        return baseline();

    PartitionContainerCollection pc;
    if (config.mode == ColoringMode::Auto) {
        pc = build_partition(g, k, false, false);
        if (pc.low_degree)
            return baseline();
    } else {
        // Below the degree threshold the split property is not guaranteed
        // under the size ceiling; without the ceiling every union of k base
        // containers is present and the decision stays exact.
        const bool relaxed = g.average_degree() < degree_threshold(g, k);
        pc = build_partition(g, k, config.force, relaxed);
        if (pc.low_degree)
            return baseline();
        result.stats.relaxed_ceiling = relaxed;
    }
    result.stats.path = "containers";
    result.stats.base_containers = pc.base.size();
    result.stats.partition_containers = pc.size();

    struct Task {
        std::size_t a, b;
        int s; // colors confined to C_a; the other k - s go to C_b
    };
    const auto& P = pc.containers;
    const VertexSet full = g.full_set();
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t a = 0; a < P.size(); ++a) {
        if (P[a] == full)
            pairs.emplace_back(a, a);
        for (std::size_t b = a + 1; b < P.size(); ++b)
            if ((P[a] | P[b]) == full)
                pairs.emplace_back(a, b);
    }
    std::stable_sort(pairs.begin(), pairs.end(), [&](const auto& x, const auto& y) {
        return P[x.first].size() + P[x.second].size() < P[y.first].size() + P[y.second].size();
    });
    std::vector<Task> tasks;
    for (auto [a, b] : pairs) {
        if (a == b) {
            tasks.push_back({a, b, k});
            continue;
        }
        for (int s = 1; s < k; ++s)
            tasks.push_back({a, b, s});
        if (tasks.size() > config.max_pairs)
            throw SizeError("coloring", "more than " + std::to_string(config.max_pairs) + " container pairs to test");
    }

    auto containers_for = [&](const Task& t) {
        std::vector<VertexSet> cs;
        for (int j = 0; j < k; ++j)
            cs.push_back(j < t.s ? P[t.a] : P[t.b]);
        return cs;
    };
    std::atomic<std::size_t> tested{0};
    std::atomic<int> largest{0};
    auto hit = parallel_find_first(tasks.size(), config.workers, [&](std::size_t i) {
        ++tested;
        const auto& t = tasks[i];
        int size = std::max(P[t.a].size(), P[t.b].size());
        int cur = largest.load();
        while (size > cur && !largest.compare_exchange_weak(cur, size)) {
        }
        return constrained_F(g, containers_for(t)) > 0;
    });
    result.stats.pairs_tested = tested.load();
    result.stats.largest_table_log2 = largest.load();
    result.colorable = hit.has_value();
    if (result.colorable && config.certificate)
        result.certificate = extract_coloring(g, containers_for(tasks[*hit]));
    return result;
}

auto to_json(const ColoringResult& r) -> nlohmann::json
{
    nlohmann::json j = {
        {"decision", r.colorable},
        {"stats",
         {{"path", r.stats.path},
          {"base_containers", r.stats.base_containers},
          {"partition_containers", r.stats.partition_containers},
          {"pairs_tested", r.stats.pairs_tested},
          {"largest_table_log2", r.stats.largest_table_log2},
          {"relaxed_ceiling", r.stats.relaxed_ceiling}}},
    };
    if (r.certificate)
        j["certificate"] = *r.certificate;
    return j;
}

} // namespace hcm
