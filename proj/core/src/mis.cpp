#include "hcm/mis.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>

#include "hcm/containers.hpp"
#include "hcm/errors.hpp"
#include "hcm/parallel.hpp"

namespace hcm {

namespace {

class BranchAndBound {
public:
    BranchAndBound(const Graph& g, const std::vector<std::int64_t>* weights) : g_(g), weights_(weights), best_(g.num_vertices()) {}

    auto weight_of(const VertexSet& s) const -> std::int64_t
    {
        if (!weights_)
            return s.size();
        std::int64_t w = 0;
        for (int v : s)
            w += (*weights_)[static_cast<std::size_t>(v)];
        return w;
    }

    void run()
    {
        greedy();
        search(g_.full_set(), g_.empty_set(), 0);
    }

    auto best() const -> const VertexSet& { return best_; }
    auto best_weight() const -> std::int64_t { return best_weight_; }
    auto nodes() const -> std::uint64_t { return nodes_; }

private:
    void greedy()
    {
        VertexSet cand = g_.full_set();
        VertexSet chosen = g_.empty_set();
        while (!cand.empty()) {
            int pick = -1;
            int pick_deg = 0;
            for (int v : cand) {
                int d = g_.neighborhood(v).intersection_size(cand);
                if (pick < 0 || d < pick_deg) {
                    pick = v;
                    pick_deg = d;
                }
            }
            chosen.insert(pick);
            cand -= g_.neighborhood(pick);
            cand.erase(pick);
        }
        best_ = chosen;
        best_weight_ = weight_of(chosen);
    }

    void search(VertexSet cand, VertexSet current, std::int64_t current_weight)
    {
        ++nodes_;
        while (true) {
            if (current_weight + weight_of(cand) <= best_weight_)
                return;
            int branch = -1;
            int branch_deg = -1;
            for (int v : cand) {
                int d = g_.neighborhood(v).intersection_size(cand);
                if (d == 0) {
                    cand.erase(v);
                    current.insert(v);
                    current_weight += weights_ ? (*weights_)[static_cast<std::size_t>(v)] : 1;
                } else if (d > branch_deg) {
                    branch = v;
                    branch_deg = d;
                }
            }
            if (branch < 0) {
                if (current_weight > best_weight_) {
                    best_weight_ = current_weight;
                    best_ = current;
                }
                return;
            }
            VertexSet with = cand - g_.neighborhood(branch);
            with.erase(branch);
            VertexSet chosen = current;
            chosen.insert(branch);
            search(std::move(with), std::move(chosen),
                   current_weight + (weights_ ? (*weights_)[static_cast<std::size_t>(branch)] : 1));
            cand.erase(branch);
            ++nodes_;
        }
    }

    const Graph& g_;
    const std::vector<std::int64_t>* weights_;
    VertexSet best_;
    std::int64_t best_weight_ = 0;
    std::uint64_t nodes_ = 0;
};

void check_weights(const Graph& g, const std::vector<std::int64_t>* weights)
{
    if (!weights)
        return;
    if (static_cast<int>(weights->size()) != g.num_vertices())
        throw PreconditionError("weight vector length differs from the vertex count");
    for (auto w : *weights)
        if (w < 0)
            throw PreconditionError("weights must be non-negative");
}

auto lex_less(const VertexSet& a, const VertexSet& b) -> bool
{
    auto va = a.to_vector();
    auto vb = b.to_vector();
    return std::lexicographical_compare(va.begin(), va.end(), vb.begin(), vb.end());
}

} // namespace

auto mis_base(const Graph& g, const std::vector<std::int64_t>* weights) -> MisResult
{
    check_weights(g, weights);
    BranchAndBound bb(g, weights);
    bb.run();
    MisResult r;
    r.best = bb.best();
    r.size = r.best.size();
    r.weight = bb.best_weight();
    r.stats.path = "base";
    r.stats.nodes = bb.nodes();
    r.stats.largest_subproblem = g.num_vertices();
    return r;
}

auto mis_containers(const Graph& g, const MisParams& params, const std::vector<std::int64_t>* weights) -> MisResult
{
    check_weights(g, weights);
    if (params.mode == MisMode::Base || g.num_edges() == 0)
        return mis_base(g, weights);

    BuildOptions opts;
    opts.force = params.mode == MisMode::Containers && params.force;
    opts.keep_fingerprints = false;
    ContainerCollection coll;
    if (g.is_regular()) {
        coll = build_regular_collection(g, params.epsilon, opts);
    } else {
        const double C = params.C.value_or(static_cast<double>(g.max_degree()) / g.average_degree());
        coll = build_almost_regular_collection(g, C, params.epsilon, opts);
    }
    if (coll.low_degree) {
        auto r = mis_base(g, weights);
        r.stats.path = "base-fallback";
        return r;
    }

    auto containers = prune_dominated(coll.containers);
    std::stable_sort(containers.begin(), containers.end(),
                     [](const VertexSet& a, const VertexSet& b) { return a.size() > b.size(); });

    MisResult out;
    out.best = g.empty_set();
    out.stats.path = "containers";
    out.stats.containers_total = containers.size();
    for (const auto& c : containers)
        out.stats.largest_subproblem = std::max(out.stats.largest_subproblem, c.size());

    BranchAndBound weigher(g, weights);
    std::mutex mutex;
    std::atomic<std::int64_t> best_weight{-1};
    std::atomic<std::uint64_t> nodes{0};
    std::atomic<std::size_t> used{0};
    parallel_for(containers.size(), params.workers, [&](std::size_t i) {
        const auto& c = containers[i];
        // A container lighter than the incumbent cannot hold a tie either.
        if (weigher.weight_of(c) < best_weight.load())
            return;
        auto sub = induced_subgraph(g, c);
        std::vector<std::int64_t> sub_weights;
        if (weights)
            for (int v : sub.to_parent)
                sub_weights.push_back((*weights)[static_cast<std::size_t>(v)]);
        auto r = mis_base(sub.graph, weights ? &sub_weights : nullptr);
        VertexSet mapped = g.empty_set();
        for (int v : r.best)
            mapped.insert(sub.to_parent[static_cast<std::size_t>(v)]);
        nodes += r.stats.nodes;
        ++used;
        std::lock_guard lock(mutex);
        if (r.weight > out.weight || (r.weight == out.weight && lex_less(mapped, out.best)) || best_weight.load() < 0) {
            out.best = mapped;
            out.weight = r.weight;
            best_weight.store(r.weight);
        }
    });
    out.size = out.best.size();
    out.stats.nodes = nodes.load();
    out.stats.containers_used = used.load();
    return out;
}

auto to_json(const MisResult& r) -> nlohmann::json
{
    return {
        {"size", r.size},
        {"weight", r.weight},
        {"set", r.best.to_vector()},
        {"stats",
         {{"path", r.stats.path},
          {"nodes", r.stats.nodes},
          {"containers_total", r.stats.containers_total},
          {"containers_used", r.stats.containers_used},
          {"largest_subproblem", r.stats.largest_subproblem}}},
    };
}

} // namespace hcm
