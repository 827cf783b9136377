#include "hcm/sat.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <mutex>

#include "hcm/errors.hpp"
#include "hcm/parallel.hpp"

namespace hcm {

namespace {

constexpr int kUnset = -1;

auto var_of(Literal l) -> std::size_t { return static_cast<std::size_t>(std::abs(l) - 1); }

/// 1 true, 0 false, -1 unassigned.
auto literal_value(const std::vector<int>& a, Literal l) -> int
{
    const int v = a[var_of(l)];
    if (v == kUnset)
        return kUnset;
    return (l > 0) == (v == 1) ? 1 : 0;
}

/// Unit propagation to a fixed point; false on a falsified clause.
auto propagate(const std::vector<Clause>& clauses, std::vector<int>& a) -> bool
{
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& c : clauses) {
            int open = 0;
            Literal last = 0;
            bool sat = false;
            for (Literal l : c) {
                const int val = literal_value(a, l);
                if (val == 1) {
                    sat = true;
                    break;
                }
                if (val == kUnset) {
                    ++open;
                    last = l;
                }
            }
            if (sat)
                continue;
            if (open == 0)
                return false;
            if (open == 1) {
                a[var_of(last)] = last > 0 ? 1 : 0;
                changed = true;
            }
        }
    }
    return true;
}

class Dpll {
public:
    explicit Dpll(const CnfFormula& phi) : phi_(phi) {}

    auto solve(std::vector<int>& a) -> bool
    {
        ++nodes_;
        const auto& clauses = phi_.clauses();
        while (true) {
            if (!propagate(clauses, a))
                return false;
            const auto n = static_cast<std::size_t>(phi_.num_vars());
            std::vector<int> pos(n, 0), neg(n, 0);
            bool open_clause = false;
            for (const auto& c : clauses) {
                if (std::any_of(c.begin(), c.end(), [&](Literal l) { return literal_value(a, l) == 1; }))
                    continue;
                open_clause = true;
                for (Literal l : c)
                    if (literal_value(a, l) == kUnset)
                        ++(l > 0 ? pos : neg)[var_of(l)];
            }
            if (!open_clause)
                return true;
            bool pure = false;
            std::size_t branch = n;
            int branch_count = 0;
            for (std::size_t v = 0; v < n; ++v) {
                if (a[v] != kUnset || pos[v] + neg[v] == 0)
                    continue;
                if (pos[v] == 0 || neg[v] == 0) {
                    a[v] = pos[v] > 0 ? 1 : 0;
                    pure = true;
                } else if (pos[v] + neg[v] > branch_count) {
                    branch = v;
                    branch_count = pos[v] + neg[v];
                }
            }
            if (pure)
                continue;
            const int first = pos[branch] >= neg[branch] ? 1 : 0;
            for (int value : {first, 1 - first}) {
                auto trial = a;
                trial[branch] = value;
                if (solve(trial)) {
                    a = std::move(trial);
                    return true;
                }
            }
            return false;
        }
    }

    auto nodes() const -> std::uint64_t { return nodes_; }

private:
    const CnfFormula& phi_;
    std::uint64_t nodes_ = 0;
};

auto to_model(const std::vector<int>& a) -> std::vector<bool>
{
    std::vector<bool> model(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        model[i] = a[i] == 1;
    return model;
}

} // namespace

auto build_literal_hypergraph(const CnfFormula& phi, std::optional<int> k) -> LiteralHypergraph
{
    LiteralHypergraph out;
    out.num_vars = phi.num_vars();
    out.k = k.value_or(std::max(phi.width(), 1));
    if (out.k < 1)
        throw ParameterError("clause width must be positive");
    std::vector<std::vector<int>> edges;
    for (const auto& c : phi.clauses()) {
        if (static_cast<int>(c.size()) != out.k)
            throw ParameterError("clause of width " + std::to_string(c.size()) + " in a " + std::to_string(out.k) +
                                 "-CNF formula");
        std::vector<int> e;
        for (Literal l : c)
            e.push_back(LiteralHypergraph::vertex_of(-l));
        std::sort(e.begin(), e.end());
        edges.push_back(std::move(e));
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    out.h = Hypergraph::from_edges(2 * phi.num_vars(), out.k, std::move(edges));
    return out;
}

auto assignment_literals(const std::vector<bool>& alpha) -> VertexSet
{
    VertexSet s(2 * static_cast<int>(alpha.size()));
    for (std::size_t i = 0; i < alpha.size(); ++i)
        s.insert(static_cast<int>(2 * i + (alpha[i] ? 0 : 1)));
    return s;
}

auto restrict_formula(const CnfFormula& phi, const VertexSet& kept) -> Restriction
{
    const int n = phi.num_vars();
    if (kept.universe() != 2 * n)
        throw PreconditionError("kept set must live on the 2n literals");
    Restriction r;
    r.assignment.assign(static_cast<std::size_t>(n), kUnset);
    for (int i = 0; i < n; ++i) {
        const bool pos = kept.contains(2 * i);
        const bool neg = kept.contains(2 * i + 1);
        if (!pos && !neg) {
            r.contradiction = true;
            return r;
        }
        if (!pos)
            r.assignment[static_cast<std::size_t>(i)] = 0;
        else if (!neg)
            r.assignment[static_cast<std::size_t>(i)] = 1;
        else
            ++r.unassigned_by_absence;
    }
    if (!propagate(phi.clauses(), r.assignment)) {
        r.contradiction = true;
        return r;
    }
    std::vector<Clause> residual;
    for (const auto& c : phi.clauses()) {
        if (std::any_of(c.begin(), c.end(), [&](Literal l) { return literal_value(r.assignment, l) == 1; }))
            continue;
        Clause rest;
        for (Literal l : c)
            if (literal_value(r.assignment, l) == kUnset)
                rest.push_back(l);
        residual.push_back(std::move(rest));
    }
    r.residual = CnfFormula(n, std::move(residual));
    r.unassigned = static_cast<int>(std::count(r.assignment.begin(), r.assignment.end(), kUnset));
    return r;
}

auto dpll(const CnfFormula& phi) -> SatResult
{
    Dpll solver(phi);
    std::vector<int> a(static_cast<std::size_t>(phi.num_vars()), kUnset);
    SatResult r;
    r.satisfiable = solver.solve(a);
    r.nodes = solver.nodes();
    if (r.satisfiable)
        r.model = to_model(a);
    return r;
}

auto brute_force_sat(const CnfFormula& phi) -> bool
{
    const int n = phi.num_vars();
    if (n > 24)
        throw SizeError("sat", "truth table limited to 24 variables");
    std::vector<bool> a(static_cast<std::size_t>(n));
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
        for (int i = 0; i < n; ++i)
            a[static_cast<std::size_t>(i)] = (m >> i) & 1U;
        if (phi.satisfied_by(a))
            return true;
    }
    return false;
}

auto to_string(StructureOutcome o) -> std::string
{
    switch (o) {
    case StructureOutcome::Found:
        return "found";
    case StructureOutcome::FoundCodegreeFails:
        return "found-codegree-fails";
    case StructureOutcome::Absent:
        return "absent";
    }
    return "unknown";
}

auto extract_structure(const Hypergraph& h, const StructureParams& params) -> StructureReport
{
    if (!(params.D > 0.0) || !(params.C > 0.0) || !(params.epsilon >= 0.0 && params.epsilon < 1.0))
        throw ParameterError("structure parameters need D > 0, C > 0 and epsilon in [0, 1)");
    const int n = h.num_vertices();
    const int r = h.uniformity();
    const auto D = static_cast<std::int64_t>(std::ceil(params.D - 1e-9));
    StructureReport rep;
    rep.certified_degree_bound = (r + 1) * params.D;

    std::vector<char> retired(static_cast<std::size_t>(n), 0);
    std::vector<char> taken(static_cast<std::size_t>(h.num_edges()), 0);
    std::vector<std::int64_t> deg(static_cast<std::size_t>(n), 0);
    auto alive = [&](std::size_t e) {
        if (taken[e])
            return false;
        for (int u : h.edge(e))
            if (retired[static_cast<std::size_t>(u)])
                return false;
        return true;
    };
    while (true) {
        int pick = -1;
        for (int v = 0; v < n && pick < 0; ++v) {
            if (retired[static_cast<std::size_t>(v)])
                continue;
            std::int64_t count = 0;
            for (auto e : h.incident(v))
                if (alive(e) && ++count >= D)
                    break;
            if (count >= D)
                pick = v;
        }
        if (pick < 0)
            break;
        ++rep.picked_vertices;
        std::int64_t added = 0;
        for (auto e : h.incident(pick)) {
            if (added == D)
                break;
            if (!alive(e))
                continue;
            taken[e] = 1;
            rep.edges.push_back(e);
            for (int u : h.edge(e))
                ++deg[static_cast<std::size_t>(u)];
            ++added;
        }
        retired[static_cast<std::size_t>(pick)] = 1;
        for (int u = 0; u < n; ++u)
            if (deg[static_cast<std::size_t>(u)] > r * D)
                retired[static_cast<std::size_t>(u)] = 1;
    }
    for (int v = 0; v < n; ++v) {
        if (retired[static_cast<std::size_t>(v)])
            continue;
        std::int64_t count = 0;
        for (auto e : h.incident(v))
            count += alive(e) ? 1 : 0;
        rep.residual_max_degree = std::max(rep.residual_max_degree, count);
    }
    std::sort(rep.edges.begin(), rep.edges.end());
    if (rep.edges.empty() || n == 0)
        return rep;
    const Hypergraph sub = h.edge_subhypergraph(rep.edges);
    rep.density = static_cast<double>(rep.edges.size()) / n;
    rep.max_degree = max_codegree(sub, 1);
    rep.max_codegree = r >= 2 ? max_codegree(sub, 2) : 0;
    rep.degree_bound = params.C * rep.density;
    rep.codegree_bound = params.C * std::pow(rep.density, 1.0 - params.epsilon);
    // The extraction certifies an (eps D / 2, (r+1) D, 0)-structure once E' is that dense.
    if (rep.density + 1e-9 < params.epsilon * params.D / 2.0)
        return rep;
    rep.outcome = static_cast<double>(rep.max_codegree) <= rep.codegree_bound + 1e-9 ? StructureOutcome::Found
                                                                                     : StructureOutcome::FoundCodegreeFails;
    return rep;
}

auto solve_ksat_dense(const CnfFormula& phi, const StructureParams& params, const SatConfig& config) -> DenseSatResult
{
    DenseSatResult out;
    auto run_dpll = [&](std::string path) {
        auto r = dpll(phi);
        out.satisfiable = r.satisfiable;
        out.model = r.model;
        out.stats.path = std::move(path);
        out.stats.dpll_nodes += r.nodes;
        out.stats.largest_unassigned = phi.num_vars();
        return out;
    };
    if (config.mode == SatMode::Dpll)
        return run_dpll("dpll");
    if (phi.num_clauses() == 0) {
        out.satisfiable = true;
        out.model = std::vector<bool>(static_cast<std::size_t>(phi.num_vars()), false);
        out.stats.path = "trivial";
        return out;
    }
    const auto lh = build_literal_hypergraph(phi);
    if (lh.k < 2)
        return run_dpll("dpll-fallback");
    out.stats.structure = extract_structure(lh.h, params);
    const auto& rep = *out.stats.structure;
    if (rep.edges.empty() || (config.mode == SatMode::Auto && rep.outcome != StructureOutcome::Found))
        return run_dpll("dpll-fallback");

    HypergraphContainerParams hp;
    hp.r = lh.k;
    hp.C = params.C;
    hp.p = std::clamp(std::pow(params.D, -params.epsilon / lh.k), 1e-6, 1.0 - 1e-6);
    hp.eps_edges = config.eps_edges;
    hp.M = config.M;
    BuildOptions opts;
    opts.skip_condition_check = true; // co-degrees were checked on E'
    opts.keep_fingerprints = false;
    opts.max_containers = config.max_containers;
    ContainerCollection coll;
    try {
        coll = build_hypergraph_collection(lh.h.edge_subhypergraph(rep.edges), hp, opts);
    } catch (const SizeError&) {
        if (config.mode != SatMode::Auto)
            throw;
        return run_dpll("dpll-fallback");
    }
    out.stats.path = "containers";
    out.stats.containers = coll.size();
    out.stats.largest_container = coll.max_container_size;

    const int n = phi.num_vars();
    std::vector<std::optional<std::vector<bool>>> models(coll.size());
    std::mutex mutex;
    auto hit = parallel_find_first(coll.size(), config.workers, [&](std::size_t i) {
        const auto& c = coll.containers[i];
        auto r = restrict_formula(phi, c);
        bool arithmetic = r.contradiction || r.unassigned_by_absence == c.size() - n;
        if (r.contradiction) {
            std::lock_guard lock(mutex);
            ++out.stats.containers_solved;
            out.stats.restriction_arithmetic_ok = out.stats.restriction_arithmetic_ok && arithmetic;
            return false;
        }
        auto s = dpll(r.residual);
        {
            std::lock_guard lock(mutex);
            ++out.stats.containers_solved;
            out.stats.restriction_arithmetic_ok = out.stats.restriction_arithmetic_ok && arithmetic;
            out.stats.largest_unassigned = std::max(out.stats.largest_unassigned, r.unassigned);
            out.stats.dpll_nodes += s.nodes;
        }
        if (!s.satisfiable)
            return false;
        std::vector<bool> model = *s.model;
        for (std::size_t v = 0; v < static_cast<std::size_t>(n); ++v)
            if (r.assignment[v] != kUnset)
                model[v] = r.assignment[v] == 1;
        models[i] = std::move(model);
        return true;
    });
    if (hit) {
        out.satisfiable = true;
        out.model = models[*hit];
        if (!phi.satisfied_by(*out.model))
            throw Error("container model does not satisfy the formula");
    }
    return out;
}

auto to_json(const StructureReport& r) -> nlohmann::json
{
    return {
        {"outcome", to_string(r.outcome)},
        {"edges", r.edges.size()},
        {"picked_vertices", r.picked_vertices},
        {"density", r.density},
        {"max_degree", r.max_degree},
        {"max_codegree", r.max_codegree},
        {"certified_degree_bound", r.certified_degree_bound},
        {"degree_bound", r.degree_bound},
        {"codegree_bound", r.codegree_bound},
        {"residual_max_degree", r.residual_max_degree},
    };
}

auto to_json(const DenseSatResult& r) -> nlohmann::json
{
    nlohmann::json j = {
        {"decision", r.satisfiable},
        {"stats",
         {{"path", r.stats.path},
          {"containers", r.stats.containers},
          {"containers_solved", r.stats.containers_solved},
          {"largest_container", r.stats.largest_container},
          {"largest_unassigned", r.stats.largest_unassigned},
          {"dpll_nodes", r.stats.dpll_nodes},
          {"restriction_arithmetic_ok", r.stats.restriction_arithmetic_ok}}},
    };
    if (r.stats.structure)
        j["structure"] = to_json(*r.stats.structure);
    if (r.model) {
        std::vector<int> bits;
        for (bool b : *r.model)
            bits.push_back(b ? 1 : 0);
        j["model"] = bits;
    }
    return j;
}

} // namespace hcm
