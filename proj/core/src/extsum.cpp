#include "hcm/extsum.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <set>

#include "hcm/errors.hpp"
#include "hcm/random.hpp"

namespace hcm {

namespace {

/// Positions of `target` inside the sorted list `vars` (target must be a subset).
auto positions_in(const std::vector<int>& vars, const std::vector<int>& target) -> std::vector<int>
{
    std::vector<int> pos;
    pos.reserve(target.size());
    for (int t : target) {
        auto it = std::lower_bound(vars.begin(), vars.end(), t);
        pos.push_back(static_cast<int>(it - vars.begin()));
    }
    return pos;
}

/// Gathers the bits of idx at the given positions into a compact index.
auto gather(std::uint64_t idx, const std::vector<int>& pos) -> std::uint64_t
{
    std::uint64_t out = 0;
    for (std::size_t j = 0; j < pos.size(); ++j)
        out |= ((idx >> pos[j]) & 1U) << j;
    return out;
}

auto intersect(const std::vector<int>& a, const std::vector<int>& b) -> std::vector<int>
{
    std::vector<int> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

auto subtract(const std::vector<int>& a, const std::vector<int>& b) -> std::vector<int>
{
    std::vector<int> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

auto unite(const std::vector<int>& a, const std::vector<int>& b) -> std::vector<int>
{
    std::vector<int> out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

auto pow2(int e) -> BigInt
{
    return BigInt(1) << e;
}

/// 2^(number of variables in no subset).
auto free_factor(const ExtSumInstance& inst) -> BigInt
{
    std::vector<int> all;
    for (const auto& s : inst.subsets)
        all = unite(all, s);
    return pow2(inst.universe - static_cast<int>(all.size()));
}

auto table_sum(const std::vector<BigInt>& t) -> BigInt
{
    BigInt s = 0;
    for (const auto& x : t)
        s += x;
    return s;
}

void require_count(const ExtSumInstance& inst, std::size_t k, const char* who)
{
    inst.validate();
    if (inst.size() != k)
        throw PreconditionError(std::string(who) + " needs exactly " + std::to_string(k) + " subsets, got " +
                                std::to_string(inst.size()));
}

auto pairwise_disjoint(const ExtSumInstance& inst) -> bool
{
    std::vector<char> used(static_cast<std::size_t>(inst.universe), 0);
    for (const auto& s : inst.subsets)
        for (int v : s) {
            if (used[static_cast<std::size_t>(v)])
                return false;
            used[static_cast<std::size_t>(v)] = 1;
        }
    return true;
}

} // namespace

auto ExtSumInstance::subset_set(std::size_t i) const -> VertexSet
{
    VertexSet s(universe);
    for (int v : subsets[i])
        s.insert(v);
    return s;
}

void ExtSumInstance::validate(std::size_t max_entries) const
{
    if (universe < 0)
        throw PreconditionError("negative universe");
    if (subsets.size() != tables.size())
        throw PreconditionError("subset and table counts differ");
    for (std::size_t i = 0; i < subsets.size(); ++i) {
        const auto& s = subsets[i];
        for (std::size_t j = 0; j < s.size(); ++j) {
            if (s[j] < 0 || s[j] >= universe)
                throw PreconditionError("subset " + std::to_string(i) + " has variable out of range");
            if (j > 0 && s[j - 1] >= s[j])
                throw PreconditionError("subset " + std::to_string(i) + " is not strictly increasing");
        }
        if (s.size() >= 63 || (std::size_t{1} << s.size()) > max_entries)
            throw SizeError("extsum", "table " + std::to_string(i) + " needs 2^" + std::to_string(s.size()) + " entries");
        if (tables[i].size() != (std::size_t{1} << s.size()))
            throw PreconditionError("table " + std::to_string(i) + " must have 2^|X_i| entries");
    }
}

auto eval_naive(const ExtSumInstance& inst, int max_universe) -> BigInt
{
    inst.validate();
    if (inst.universe > max_universe)
        throw SizeError("extsum", "naive evaluation limited to |X| <= " + std::to_string(max_universe));
    BigInt total = 0;
    BigInt prod;
    const std::uint64_t limit = std::uint64_t{1} << inst.universe;
    for (std::uint64_t alpha = 0; alpha < limit; ++alpha) {
        prod = 1;
        for (std::size_t i = 0; i < inst.size() && prod != 0; ++i)
            prod *= inst.tables[i][gather(alpha, inst.subsets[i])];
        total += prod;
    }
    return total;
}

auto eval_disjoint(const ExtSumInstance& inst) -> BigInt
{
    inst.validate();
    if (!pairwise_disjoint(inst))
        throw PreconditionError("eval_disjoint needs pairwise disjoint subsets");
    BigInt result = free_factor(inst);
    for (const auto& t : inst.tables)
        result *= table_sum(t);
    return result;
}

auto eval_k2(const ExtSumInstance& inst, std::uint64_t* iterations) -> BigInt
{
    require_count(inst, 2, "eval_k2");
    const auto common = intersect(inst.subsets[0], inst.subsets[1]);
    const std::size_t overlap = std::size_t{1} << common.size();
    std::uint64_t visited = 0;
    std::vector<std::vector<BigInt>> sums(2, std::vector<BigInt>(overlap));
    for (std::size_t i = 0; i < 2; ++i) {
        const auto pos = positions_in(inst.subsets[i], common);
        const auto& table = inst.tables[i];
        for (std::uint64_t idx = 0; idx < table.size(); ++idx) {
            sums[i][gather(idx, pos)] += table[idx];
            ++visited;
        }
    }
    BigInt total = 0;
    for (std::size_t beta = 0; beta < overlap; ++beta)
        total += sums[0][beta] * sums[1][beta];
    if (iterations)
        *iterations = visited;
    return total * free_factor(inst);
}

auto eval_k3(const ExtSumInstance& inst) -> BigInt
{
    require_count(inst, 3, "eval_k3");
    const auto& x1 = inst.subsets[0];
    const auto& x2 = inst.subsets[1];
    const auto& x3 = inst.subsets[2];
    const auto common = intersect(intersect(x1, x2), x3);
    const auto p12 = subtract(intersect(x1, x2), x3);
    const auto p13 = subtract(intersect(x1, x3), x2);
    const auto p23 = subtract(intersect(x2, x3), x1);
    const std::size_t nc = std::size_t{1} << common.size();
    const std::size_t n12 = std::size_t{1} << p12.size();
    const std::size_t n13 = std::size_t{1} << p13.size();
    const std::size_t n23 = std::size_t{1} << p23.size();

    // m[beta][a][b]: table summed over its private variables.
    auto aggregate = [&](std::size_t i, const std::vector<int>& axis_a, const std::vector<int>& axis_b, std::size_t na,
                         std::size_t nb) {
        std::vector<BigInt> m(nc * na * nb);
        const auto pc = positions_in(inst.subsets[i], common);
        const auto pa = positions_in(inst.subsets[i], axis_a);
        const auto pb = positions_in(inst.subsets[i], axis_b);
        const auto& table = inst.tables[i];
        for (std::uint64_t idx = 0; idx < table.size(); ++idx)
            m[(gather(idx, pc) * na + gather(idx, pa)) * nb + gather(idx, pb)] += table[idx];
        return m;
    };
    const auto m1 = aggregate(0, p12, p13, n12, n13);
    const auto m2 = aggregate(1, p12, p23, n12, n23);
    const auto m3 = aggregate(2, p13, p23, n13, n23);

    BigInt total = 0;
    BigInt cell;
    for (std::size_t beta = 0; beta < nc; ++beta) {
        const BigInt* a = &m1[beta * n12 * n13];
        const BigInt* b = &m2[beta * n12 * n23];
        const BigInt* c = &m3[beta * n13 * n23];
        // sum over (u, w) of b[u][w] * (a * c)[u][w]
        for (std::size_t u = 0; u < n12; ++u)
            for (std::size_t w = 0; w < n23; ++w) {
                if (b[u * n23 + w] == 0)
                    continue;
                cell = 0;
                for (std::size_t v = 0; v < n13; ++v)
                    cell += a[u * n13 + v] * c[v * n23 + w];
                total += cell * b[u * n23 + w];
            }
    }
    return total * free_factor(inst);
}

auto eval_auto(const ExtSumInstance& inst) -> BigInt
{
    inst.validate();
    if (pairwise_disjoint(inst))
        return eval_disjoint(inst);
    if (inst.size() == 2)
        return eval_k2(inst);
    if (inst.size() == 3)
        return eval_k3(inst);
    return eval_naive(inst);
}

auto make_refinement(const ExtSumInstance& inst, const std::vector<std::vector<std::size_t>>& groups)
    -> RefinementResult
{
    RefinementResult ref;
    for (const auto& g : groups) {
        VertexSet u(inst.universe);
        for (auto i : g)
            u |= inst.subset_set(i);
        ref.gamma = std::max(ref.gamma, inst.universe > 0 ? static_cast<double>(u.size()) / inst.universe : 0.0);
        ref.parts.push_back({g, std::move(u)});
    }
    return ref;
}

auto reduce_refinement(const ExtSumInstance& inst, const RefinementResult& ref, std::size_t max_entries)
    -> ExtSumInstance
{
    inst.validate();
    std::vector<int> seen(inst.size(), 0);
    for (const auto& part : ref.parts)
        for (auto i : part.members) {
            if (i >= inst.size() || seen[i]++)
                throw PreconditionError("refinement parts must partition the subset indices");
        }
    if (std::find(seen.begin(), seen.end(), 0) != seen.end())
        throw PreconditionError("refinement parts must cover every subset index");

    ExtSumInstance out;
    out.universe = inst.universe;
    for (const auto& part : ref.parts) {
        std::vector<int> merged;
        for (auto i : part.members)
            merged = unite(merged, inst.subsets[i]);
        if (part.set_union.universe() == inst.universe && static_cast<int>(merged.size()) != part.set_union.size())
            throw PreconditionError("refinement part union does not match its members");
        if (merged.size() >= 63 || (std::size_t{1} << merged.size()) > max_entries)
            throw SizeError("extsum", "merged part needs 2^" + std::to_string(merged.size()) + " table entries");
        std::vector<std::vector<int>> pos;
        for (auto i : part.members)
            pos.push_back(positions_in(merged, inst.subsets[i]));
        std::vector<BigInt> table(std::size_t{1} << merged.size());
        for (std::uint64_t idx = 0; idx < table.size(); ++idx) {
            BigInt prod = 1;
            for (std::size_t j = 0; j < part.members.size() && prod != 0; ++j)
                prod *= inst.tables[part.members[j]][gather(idx, pos[j])];
            table[idx] = std::move(prod);
        }
        out.subsets.push_back(std::move(merged));
        out.tables.push_back(std::move(table));
    }
    return out;
}

// ---------------------------------------------------------------------------

auto hyperclique_to_extsum(const Hypergraph& h, int k) -> ExtSumInstance
{
    const int r = h.uniformity();
    const int n = h.num_vertices();
    if (k <= r)
        throw ParameterError("hyperclique reduction needs k > r");
    const int b = n <= 1 ? 0 : std::bit_width(static_cast<unsigned>(n - 1));
    if (static_cast<std::int64_t>(k) * b > 62 || r * b > 24)
        throw SizeError("extsum", "hyperclique reduction too large");
    std::set<std::vector<int>> edges(h.edges().begin(), h.edges().end());

    ExtSumInstance inst;
    inst.universe = k * b;
    std::vector<bool> pick(static_cast<std::size_t>(k), false);
    std::fill(pick.begin(), pick.begin() + r, true);
    const std::uint64_t code_mask = (std::uint64_t{1} << b) - 1;
    do {
        std::vector<int> blocks;
        for (int i = 0; i < k; ++i)
            if (pick[static_cast<std::size_t>(i)])
                blocks.push_back(i);
        std::vector<int> vars;
        for (int blk : blocks)
            for (int j = 0; j < b; ++j)
                vars.push_back(blk * b + j);
        std::vector<BigInt> table(std::size_t{1} << vars.size());
        std::vector<int> decoded(static_cast<std::size_t>(r));
        for (std::uint64_t idx = 0; idx < table.size(); ++idx) {
            bool valid = true;
            for (int t = 0; t < r; ++t) {
                auto code = static_cast<int>((idx >> (t * b)) & code_mask);
                valid = valid && code < n;
                decoded[static_cast<std::size_t>(t)] = code;
            }
            if (!valid)
                continue;
            std::vector<int> key = decoded;
            std::sort(key.begin(), key.end());
            table[idx] = edges.count(key) ? 1 : 0;
        }
        inst.subsets.push_back(std::move(vars));
        inst.tables.push_back(std::move(table));
    } while (std::prev_permutation(pick.begin(), pick.end()));
    return inst;
}

auto count_hypercliques(const Hypergraph& h, int k) -> std::int64_t
{
    const int n = h.num_vertices();
    const int r = h.uniformity();
    if (k < r || k > n)
        return 0;
    std::set<std::vector<int>> edges(h.edges().begin(), h.edges().end());
    std::int64_t count = 0;
    std::vector<bool> pick(static_cast<std::size_t>(n), false);
    std::fill(pick.begin(), pick.begin() + k, true);
    do {
        std::vector<int> members;
        for (int v = 0; v < n; ++v)
            if (pick[static_cast<std::size_t>(v)])
                members.push_back(v);
        bool clique = true;
        std::vector<bool> sub(static_cast<std::size_t>(k), false);
        std::fill(sub.begin(), sub.begin() + r, true);
        do {
            std::vector<int> t;
            for (int i = 0; i < k; ++i)
                if (sub[static_cast<std::size_t>(i)])
                    t.push_back(members[static_cast<std::size_t>(i)]);
            clique = edges.count(t) > 0;
        } while (clique && std::prev_permutation(sub.begin(), sub.end()));
        count += clique ? 1 : 0;
    } while (std::prev_permutation(pick.begin(), pick.end()));
    return count;
}

// ---------------------------------------------------------------------------

auto find_refinement(int universe, const std::vector<VertexSet>& subsets, int parts, int ceiling)
    -> std::optional<std::vector<std::vector<std::size_t>>>
{
    if (parts < 1)
        throw ParameterError("a refinement needs at least one part");
    for (const auto& s : subsets) {
        if (s.universe() != universe)
            throw PreconditionError("subset universe mismatch");
        if (s.size() > ceiling)
            return std::nullopt;
    }
    // Larger subsets first: they constrain the search the most.
    std::vector<std::size_t> order(subsets.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return subsets[a].size() > subsets[b].size(); });
    std::vector<VertexSet> unions;
    std::vector<std::vector<std::size_t>> groups;
    auto rec = [&](auto&& self, std::size_t pos) -> bool {
        if (pos == order.size())
            return true;
        const auto& s = subsets[order[pos]];
        for (std::size_t p = 0; p < unions.size(); ++p) {
            VertexSet next = unions[p] | s;
            if (next.size() > ceiling)
                continue;
            std::swap(unions[p], next);
            groups[p].push_back(order[pos]);
            if (self(self, pos + 1))
                return true;
            groups[p].pop_back();
            std::swap(unions[p], next);
        }
        if (static_cast<int>(unions.size()) < parts) {
            unions.push_back(s);
            groups.push_back({order[pos]});
            if (self(self, pos + 1))
                return true;
            unions.pop_back();
            groups.pop_back();
        }
        return false;
    };
    if (!rec(rec, 0))
        return std::nullopt;
    for (auto& g : groups)
        std::sort(g.begin(), g.end());
    return groups;
}

auto find_avoiding_points(int universe, const std::vector<VertexSet>& subsets, int k) -> std::optional<std::vector<int>>
{
    if (k < 1)
        throw ParameterError("k must be positive");
    const int take = std::min(k, universe);
    if (take == 0)
        return subsets.empty() ? std::optional<std::vector<int>>(std::vector<int>(static_cast<std::size_t>(k), 0))
                               : std::nullopt;
    // More distinct points are only easier to avoid, so take min(k, |X|) of them.
    std::vector<bool> pick(static_cast<std::size_t>(universe), false);
    std::fill(pick.begin(), pick.begin() + take, true);
    do {
        VertexSet points(universe);
        for (int v = 0; v < universe; ++v)
            if (pick[static_cast<std::size_t>(v)])
                points.insert(v);
        bool ok = std::none_of(subsets.begin(), subsets.end(), [&](const VertexSet& s) { return points.is_subset_of(s); });
        if (ok) {
            auto list = points.to_vector();
            while (static_cast<int>(list.size()) < k)
                list.push_back(list.back());
            return list;
        }
    } while (std::prev_permutation(pick.begin(), pick.end()));
    return std::nullopt;
}

auto middle_layer_collection(int k) -> std::vector<VertexSet>
{
    if (k < 1 || k > 15)
        throw ParameterError("middle layer needs 1 <= k <= 15");
    std::vector<VertexSet> out;
    std::vector<bool> pick(static_cast<std::size_t>(2 * k), false);
    std::fill(pick.begin(), pick.begin() + k, true);
    do {
        VertexSet s(2 * k);
        for (int v = 0; v < 2 * k; ++v)
            if (pick[static_cast<std::size_t>(v)])
                s.insert(v);
        out.push_back(std::move(s));
    } while (std::prev_permutation(pick.begin(), pick.end()));
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------

auto to_json(const ExtSumInstance& inst) -> nlohmann::json
{
    nlohmann::json tables = nlohmann::json::array();
    for (const auto& t : inst.tables) {
        nlohmann::json row = nlohmann::json::array();
        for (const auto& x : t)
            row.push_back(bigint_to_json(x));
        tables.push_back(std::move(row));
    }
    return {{"universe", inst.universe}, {"subsets", inst.subsets}, {"tables", std::move(tables)}};
}

auto extsum_from_json(const nlohmann::json& j) -> ExtSumInstance
{
    ExtSumInstance inst;
    try {
        inst.universe = j.at("universe").get<int>();
        inst.subsets = j.at("subsets").get<std::vector<std::vector<int>>>();
        for (const auto& row : j.at("tables")) {
            std::vector<BigInt> t;
            for (const auto& x : row)
                t.push_back(bigint_from_json(x));
            inst.tables.push_back(std::move(t));
        }
    } catch (const nlohmann::json::exception& e) {
        throw PreconditionError(std::string("malformed instance: ") + e.what());
    }
    inst.validate();
    return inst;
}

auto random_extsum(int universe, int count, int max_subset, int lo, int hi, std::uint64_t seed) -> ExtSumInstance
{
    if (universe < 0 || count < 0 || lo > hi)
        throw ParameterError("bad random_extsum parameters");
    Rng rng(seed);
    ExtSumInstance inst;
    inst.universe = universe;
    const int cap = std::min(max_subset, universe);
    std::vector<int> vars(static_cast<std::size_t>(universe));
    std::iota(vars.begin(), vars.end(), 0);
    for (int i = 0; i < count; ++i) {
        const auto size = static_cast<std::size_t>(uniform_below(rng, static_cast<std::uint64_t>(cap) + 1));
        // Partial Fisher-Yates for `size` distinct variables.
        for (std::size_t j = 0; j < size; ++j) {
            auto pick = j + uniform_below(rng, vars.size() - j);
            std::swap(vars[j], vars[pick]);
        }
        std::vector<int> s(vars.begin(), vars.begin() + static_cast<std::ptrdiff_t>(size));
        std::sort(s.begin(), s.end());
        std::vector<BigInt> table(std::size_t{1} << size);
        for (auto& x : table)
            x = lo + static_cast<std::int64_t>(uniform_below(rng, static_cast<std::uint64_t>(hi - lo) + 1));
        inst.subsets.push_back(std::move(s));
        inst.tables.push_back(std::move(table));
    }
    return inst;
}

} // namespace hcm
