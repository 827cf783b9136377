#include "hcm/containers.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <map>
#include <unordered_map>

#include "hcm/errors.hpp"

namespace hcm {

namespace {

// Thresholds are real-valued; a count meets one up to rounding noise in
// products such as (1 - 0.1) * 10.
constexpr double kTolerance = 1e-9;

auto meets(double count, double threshold) -> bool
{
    return count + kTolerance >= threshold;
}

/// Assigns containers canonical indices and records fingerprints.
class CollectionBuilder {
public:
    CollectionBuilder(ContainerCollection& out, const BuildOptions& opts) : out_(out), opts_(opts) {}

    void add(const VertexSet& fingerprint, VertexSet container)
    {
        ++out_.fingerprints_enumerated;
        out_.max_fingerprint_size = std::max(out_.max_fingerprint_size, fingerprint.size());
        auto [it, inserted] = index_.try_emplace(std::move(container), index_.size());
        if (inserted && index_.size() > opts_.max_containers)
            throw SizeError("containers", "more than " + std::to_string(opts_.max_containers) + " containers");
        if (opts_.keep_fingerprints)
            raw_.emplace_back(fingerprint, it->second);
    }

    /// Sorts containers canonically and remaps fingerprint indices.
    void finish()
    {
        std::vector<const VertexSet*> order(index_.size());
        for (const auto& [set, id] : index_)
            order[id] = &set;
        std::vector<std::size_t> perm(order.size());
        for (std::size_t i = 0; i < perm.size(); ++i)
            perm[i] = i;
        std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) { return *order[a] < *order[b]; });
        std::vector<std::size_t> rank(perm.size());
        out_.containers.clear();
        out_.containers.reserve(perm.size());
        for (std::size_t i = 0; i < perm.size(); ++i) {
            rank[perm[i]] = i;
            out_.containers.push_back(*order[perm[i]]);
            out_.max_container_size = std::max(out_.max_container_size, out_.containers.back().size());
        }
        out_.fingerprints.clear();
        for (auto& [f, id] : raw_)
            out_.fingerprints.emplace_back(std::move(f), rank[id]);
        std::sort(out_.fingerprints.begin(), out_.fingerprints.end());
    }

private:
    ContainerCollection& out_;
    const BuildOptions& opts_;
    std::unordered_map<VertexSet, std::size_t, VertexSetHash> index_;
    std::vector<std::pair<VertexSet, std::size_t>> raw_;
};

} // namespace

auto to_string(ContainerSource s) -> std::string
{
    switch (s) {
    case ContainerSource::RegularGraph:
        return "regular-graph";
    case ContainerSource::AlmostRegularGraph:
        return "almost-regular-graph";
    case ContainerSource::Hypergraph:
        return "hypergraph";
    case ContainerSource::HalvingFallback:
        return "halving-fallback";
    }
    return "unknown";
}

auto ContainerCollection::covers(const VertexSet& s) const -> bool
{
    return std::any_of(containers.begin(), containers.end(), [&](const VertexSet& c) { return s.is_subset_of(c); });
}

auto ContainerParams::for_graph(const Graph& g, double epsilon) -> ContainerParams
{
    if (!(epsilon > 0.0 && epsilon < 0.5))
        throw ParameterError("epsilon must lie in (0, 1/2)");
    if (g.num_edges() == 0)
        throw ParameterError("graph has no edges (d = 0)");
    return {epsilon, g.average_degree()};
}

// ---------------------------------------------------------------------------

auto fingerprint(const Graph& g, const VertexSet& independent, const ContainerParams& params) -> VertexSet
{
    if (!g.is_independent(independent))
        throw PreconditionError("fingerprint: input is not an independent set");
    const double threshold = params.epsilon * params.degree;
    VertexSet f(g.num_vertices());
    VertexSet covered(g.num_vertices()); // N(F)
    for (int v : independent) {
        if (meets(g.neighborhood(v).difference_size(covered), threshold)) {
            f.insert(v);
            covered |= g.neighborhood(v);
        }
    }
    return f;
}

auto blocked_vertices(const Graph& g, const VertexSet& fingerprint, const ContainerParams& params) -> VertexSet
{
    const double threshold = (1.0 - params.epsilon) * params.degree;
    const VertexSet nf = g.neighborhood_of(fingerprint);
    VertexSet blocked(g.num_vertices());
    if (fingerprint.empty())
        return blocked;
    const VertexSet outside = (fingerprint | nf).complement();
    for (int v : outside)
        if (meets(g.neighborhood(v).intersection_size(nf), threshold))
            blocked.insert(v);
    return blocked;
}

auto container_of(const Graph& g, const VertexSet& fingerprint, const ContainerParams& params) -> VertexSet
{
    return fingerprint | blocked_vertices(g, fingerprint, params);
}

auto build_regular_collection(const Graph& g, double epsilon, const BuildOptions& opts) -> ContainerCollection
{
    if (!g.is_regular())
        throw ParameterError("graph is not regular (degrees " + std::to_string(g.min_degree()) + ".." +
                             std::to_string(g.max_degree()) + "); use build_almost_regular_collection");
    ContainerCollection out;
    out.universe = g.num_vertices();
    out.source = ContainerSource::RegularGraph;
    if (g.num_edges() == 0) {
        if (!(epsilon > 0.0 && epsilon < 0.5))
            throw ParameterError("epsilon must lie in (0, 1/2)");
        out.params = ContainerParams{epsilon, 0.0};
        out.low_degree = true;
        return out;
    }
    const ContainerParams params = ContainerParams::for_graph(g, epsilon);
    out.params = params;
    const double d = params.degree;
    const int n = g.num_vertices();
    out.fingerprint_cap = static_cast<int>(std::floor(params.q() * n + kTolerance));
    out.declared_size_bound = (1.0 / (2.0 - epsilon) + params.q()) * n;
    if (d <= 2.0 / (epsilon * epsilon) && !opts.force) {
        out.low_degree = true;
        return out;
    }

    // Depth-first over increasing vertex sequences. Adding v keeps F
    // independent and requires |N(v) \ N(F)| >= eps d, so the sets reached
    // are exactly the F with f(F) = F, which include every f(I).
    const double threshold = epsilon * d;
    CollectionBuilder builder(out, opts);
    VertexSet f(n);
    std::function<void(int, const VertexSet&)> expand = [&](int start, const VertexSet& nf) {
        builder.add(f, container_of(g, f, params));
        for (int v = start; v < n; ++v) {
            if (nf.contains(v))
                continue;
            if (!meets(g.neighborhood(v).difference_size(nf), threshold))
                continue;
            f.insert(v);
            expand(v + 1, nf | g.neighborhood(v));
            f.erase(v);
        }
    };
    expand(0, VertexSet(n));
    builder.finish();
    return out;
}

auto halving_fallback_collection(int n) -> ContainerCollection
{
    if (n < 0 || n > 24)
        throw SizeError("containers", "halving fallback limited to n <= 24");
    ContainerCollection out;
    out.universe = n;
    out.source = ContainerSource::HalvingFallback;
    out.params = ContainerParams{};
    out.declared_size_bound = n / 2;
    const int half = n / 2;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask)
        if (std::popcount(mask) == half)
            out.containers.push_back(VertexSet::from_mask(n, mask));
    std::sort(out.containers.begin(), out.containers.end());
    out.max_container_size = half;
    return out;
}

// ---------------------------------------------------------------------------

namespace {

/// One run of the degree-greedy engine. The oracle answers "is v in I";
/// `on_leaf` receives (F, container) when the greedy stops.
class HypergraphEngine {
public:
    HypergraphEngine(const Hypergraph& h, const HypergraphContainerParams& params) : h_(h), params_(params)
    {
        const double avg = static_cast<double>(h.uniformity()) * static_cast<double>(h.num_edges()) /
                           std::max(1, h.num_vertices());
        threshold_ = params.eps_edges * avg;
        const int r = h.uniformity();
        weight_.assign(static_cast<std::size_t>(r) + 1, 0.0);
        for (int s = 1; s <= r; ++s)
            weight_[static_cast<std::size_t>(s)] = std::pow(params.p, -(r - s));
        cap_ = fingerprint_cap(h, params);
    }

    static auto fingerprint_cap(const Hypergraph& h, const HypergraphContainerParams& params) -> int
    {
        return static_cast<int>(std::ceil(params.M * params.p * h.num_vertices() - kTolerance));
    }

    auto cap() const -> int { return cap_; }

    struct State {
        VertexSet available;
        VertexSet fingerprint;
    };

    /// Removes forced vertices (a constraint e \ F of size one) and returns
    /// the vertex to branch on, or -1 when the greedy stops.
    auto step(State& s) const -> int
    {
        const int n = h_.num_vertices();
        const VertexSet alive = s.available | s.fingerprint;
        std::vector<double> score(static_cast<std::size_t>(n), 0.0);
        VertexSet forced(n);
        for (const auto& e : h_.edges()) {
            int open = 0;
            int last = -1;
            bool inside = true;
            for (int v : e) {
                if (!alive.contains(v)) {
                    inside = false;
                    break;
                }
                if (!s.fingerprint.contains(v)) {
                    ++open;
                    last = v;
                }
            }
            if (!inside)
                continue;
            if (open == 1)
                forced.insert(last);
        }
        s.available -= forced;
        if (s.fingerprint.size() >= cap_)
            return -1;
        const VertexSet alive2 = s.available | s.fingerprint;
        for (const auto& e : h_.edges()) {
            int open = 0;
            bool inside = true;
            for (int v : e) {
                if (!alive2.contains(v)) {
                    inside = false;
                    break;
                }
                open += s.fingerprint.contains(v) ? 0 : 1;
            }
            if (!inside)
                continue;
            const double w = weight_[static_cast<std::size_t>(open)];
            for (int v : e)
                if (!s.fingerprint.contains(v))
                    score[static_cast<std::size_t>(v)] += w;
        }
        int best = -1;
        double best_score = -1.0;
        for (int v : s.available) {
            if (score[static_cast<std::size_t>(v)] > best_score + kTolerance) {
                best = v;
                best_score = score[static_cast<std::size_t>(v)];
            }
        }
        if (best < 0 || !meets(best_score, threshold_))
            return -1;
        return best;
    }

    template <typename Oracle>
    auto run(Oracle&& in_set) const -> State
    {
        const int n = h_.num_vertices();
        State s{VertexSet::full(n), VertexSet(n)};
        while (true) {
            int v = step(s);
            if (v < 0)
                return s;
            s.available.erase(v);
            if (in_set(v))
                s.fingerprint.insert(v);
        }
    }

    template <typename Leaf>
    void enumerate(State s, Leaf&& on_leaf) const
    {
        int v = step(s);
        if (v < 0) {
            on_leaf(s.fingerprint, s.available | s.fingerprint);
            return;
        }
        s.available.erase(v);
        enumerate(s, on_leaf);
        s.fingerprint.insert(v);
        enumerate(std::move(s), on_leaf);
    }

private:
    const Hypergraph& h_;
    const HypergraphContainerParams& params_;
    double threshold_ = 0.0;
    std::vector<double> weight_;
    int cap_ = 0;
};

void validate_engine_params(const Hypergraph& h, const HypergraphContainerParams& params)
{
    if (h.uniformity() < 2 || params.r != h.uniformity())
        throw ParameterError("hypergraph engine needs r >= 2 matching the hypergraph uniformity");
    if (h.num_edges() == 0)
        throw ParameterError("hypergraph has no edges (|E|/|V| = 0)");
    if (!(params.eps_edges > 0.0))
        throw ParameterError("eps_edges must be positive");
    if (!(params.M > 0.0))
        throw ParameterError("M must be positive");
}

} // namespace

auto check_codegree_conditions(const Hypergraph& h, const HypergraphContainerParams& params) -> CodegreeReport
{
    CodegreeReport report;
    if (h.num_edges() == 0 || h.num_vertices() == 0) {
        report.all_pass = false;
        report.note = "zero edge density: |E|/|V| = 0";
        return report;
    }
    const double density = static_cast<double>(h.num_edges()) / h.num_vertices();
    report.all_pass = true;
    for (int i = 1; i <= h.uniformity(); ++i) {
        CodegreeRow row;
        row.i = i;
        row.measured = max_codegree(h, i);
        row.bound = params.C * std::pow(params.p, i - 1) * density;
        row.pass = meets(row.bound, static_cast<double>(row.measured));
        report.all_pass = report.all_pass && row.pass;
        report.rows.push_back(row);
    }
    return report;
}

auto hypergraph_fingerprint(const Hypergraph& h, const VertexSet& independent, const HypergraphContainerParams& params)
    -> VertexSet
{
    if (!h.is_independent(independent))
        throw PreconditionError("hypergraph_fingerprint: input is not an independent set");
    HypergraphEngine engine(h, params);
    return engine.run([&](int v) { return independent.contains(v); }).fingerprint;
}

auto hypergraph_container(const Hypergraph& h, const VertexSet& fingerprint, const HypergraphContainerParams& params)
    -> VertexSet
{
    HypergraphEngine engine(h, params);
    auto s = engine.run([&](int v) { return fingerprint.contains(v); });
    return s.available | s.fingerprint;
}

auto build_hypergraph_collection(const Hypergraph& h, const HypergraphContainerParams& params,
                                 const BuildOptions& opts) -> ContainerCollection
{
    validate_engine_params(h, params);
    if (!opts.skip_condition_check) {
        if (!(params.p > 0.0 && params.p < 1.0))
            throw ParameterError("p must lie in (0, 1)");
        auto report = check_codegree_conditions(h, params);
        for (const auto& row : report.rows)
            if (!row.pass)
                throw CodegreeError(row.i, "co-degree condition fails for i=" + std::to_string(row.i) + ": Delta_" +
                                               std::to_string(row.i) + " = " + std::to_string(row.measured) +
                                               " > " + std::to_string(row.bound));
    }
    ContainerCollection out;
    out.universe = h.num_vertices();
    out.source = ContainerSource::Hypergraph;
    out.params = params;
    HypergraphEngine engine(h, params);
    out.fingerprint_cap = engine.cap();
    CollectionBuilder builder(out, opts);
    const int n = h.num_vertices();
    engine.enumerate({VertexSet::full(n), VertexSet(n)}, [&](const VertexSet& f, VertexSet c) {
        if (params.size_ceiling && c.size() > *params.size_ceiling)
            throw SizeError("containers", "container of size " + std::to_string(c.size()) + " exceeds ceiling " +
                                              std::to_string(*params.size_ceiling));
        builder.add(f, std::move(c));
    });
    builder.finish();
    out.declared_size_bound = out.max_container_size;
    return out;
}

auto build_almost_regular_collection(const Graph& g, double C, double sparsity, const BuildOptions& opts)
    -> ContainerCollection
{
    if (!(C >= 1.0))
        throw ParameterError("degree ratio C must be >= 1");
    if (!(sparsity > 0.0 && sparsity < 1.0))
        throw ParameterError("sparsity must lie in (0, 1)");
    const double d = g.average_degree();
    if (g.num_edges() == 0)
        throw ParameterError("graph has no edges (d = 0)");
    if (!meets(C * d, g.max_degree()))
        throw ParameterError("max degree " + std::to_string(g.max_degree()) + " exceeds C * d = " + std::to_string(C * d));

    HypergraphContainerParams hp;
    hp.r = 2;
    // Delta_1 <= C d = (2C) |E|/|V| and Delta_2 = 1 = (2C) p |E|/|V|.
    hp.C = 2.0 * C;
    hp.p = 2.0 / (C * d);
    // The engine threshold is eps_edges * r |E|/|V| = eps_edges * d, so a
    // leaf has max degree below sparsity * d.
    hp.eps_edges = sparsity;
    // With r = 2 every fingerprint vertex removes >= sparsity * d vertices,
    // so the natural cap n / (sparsity d) is never binding.
    hp.M = C / sparsity + 1.0;

    ContainerCollection out;
    out.universe = g.num_vertices();
    out.source = ContainerSource::AlmostRegularGraph;
    out.params = hp;
    if (d <= 2.0 / (sparsity * sparsity) && !opts.force) {
        out.low_degree = true;
        return out;
    }
    BuildOptions inner = opts;
    inner.skip_condition_check = true; // conditions hold by the degree-ratio check above
    const Hypergraph h = Hypergraph::from_graph(g);
    out = build_hypergraph_collection(h, hp, inner);
    out.source = ContainerSource::AlmostRegularGraph;
    return out;
}

// ---------------------------------------------------------------------------

auto container_sparsity(const Graph& g, const VertexSet& c) -> std::int64_t
{
    return g.induced_edge_count(c);
}

auto prune_dominated(std::vector<VertexSet> sets) -> std::vector<VertexSet>
{
    std::sort(sets.begin(), sets.end());
    sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
    // Larger sets first so a kept set is never dominated by a later one.
    std::vector<VertexSet> kept;
    for (auto it = sets.rbegin(); it != sets.rend(); ++it) {
        bool dominated = std::any_of(kept.begin(), kept.end(), [&](const VertexSet& k) { return it->is_subset_of(k); });
        if (!dominated)
            kept.push_back(*it);
    }
    std::sort(kept.begin(), kept.end());
    return kept;
}

auto collection_report(const ContainerCollection& c, const Graph* g) -> nlohmann::json
{
    nlohmann::json params;
    if (const auto* p = std::get_if<ContainerParams>(&c.params))
        params = {{"epsilon", p->epsilon}, {"degree", p->degree}, {"q", p->degree > 0 ? p->q() : 0.0}};
    else if (const auto* hp = std::get_if<HypergraphContainerParams>(&c.params))
        params = {{"p", hp->p}, {"C", hp->C}, {"r", hp->r}, {"eps_edges", hp->eps_edges}, {"M", hp->M}};
    std::map<int, std::size_t> sizes;
    for (const auto& s : c.containers)
        ++sizes[s.size()];
    nlohmann::json size_hist = nlohmann::json::object();
    for (auto [size, count] : sizes)
        size_hist[std::to_string(size)] = count;
    nlohmann::json report = {
        {"source", to_string(c.source)},
        {"params", params},
        {"n", c.universe},
        {"low_degree", c.low_degree},
        {"container_count", c.containers.size()},
        {"fingerprints_enumerated", c.fingerprints_enumerated},
        {"fingerprint_cap", c.fingerprint_cap},
        {"max_fingerprint_size", c.max_fingerprint_size},
        {"max_container_size", c.max_container_size},
        {"declared_size_bound", c.declared_size_bound},
        {"size_histogram", size_hist},
    };
    if (g != nullptr) {
        std::map<std::int64_t, std::size_t> sparsity;
        for (const auto& s : c.containers)
            ++sparsity[container_sparsity(*g, s)];
        nlohmann::json hist = nlohmann::json::object();
        for (auto [edges, count] : sparsity)
            hist[std::to_string(edges)] = count;
        report["sparsity_histogram"] = hist;
    }
    return report;
}

} // namespace hcm
