#include "hcm/graph.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "hcm/errors.hpp"
#include "hcm/random.hpp"

namespace hcm {

auto Graph::from_edges(int n, std::span<const Edge> edges) -> Graph
{
    if (n < 0)
        throw PreconditionError("negative vertex count");
    Graph g;
    g.n_ = n;
    g.adjacency_.assign(static_cast<std::size_t>(n), {});
    g.neighbor_sets_.assign(static_cast<std::size_t>(n), VertexSet(n));
    for (auto [u, v] : edges) {
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw PreconditionError("edge (" + std::to_string(u) + ", " + std::to_string(v) + ") out of range");
        if (u == v)
            throw PreconditionError("self-loop at vertex " + std::to_string(u));
        if (g.neighbor_sets_[static_cast<std::size_t>(u)].contains(v))
            throw PreconditionError("duplicate edge (" + std::to_string(u) + ", " + std::to_string(v) + ")");
        g.neighbor_sets_[static_cast<std::size_t>(u)].insert(v);
        g.neighbor_sets_[static_cast<std::size_t>(v)].insert(u);
        g.adjacency_[static_cast<std::size_t>(u)].push_back(v);
        g.adjacency_[static_cast<std::size_t>(v)].push_back(u);
        ++g.m_;
    }
    for (auto& list : g.adjacency_)
        std::sort(list.begin(), list.end());
    if (n > 0) {
        g.max_degree_ = 0;
        g.min_degree_ = n;
        for (const auto& list : g.adjacency_) {
            g.max_degree_ = std::max(g.max_degree_, static_cast<int>(list.size()));
            g.min_degree_ = std::min(g.min_degree_, static_cast<int>(list.size()));
        }
    }
    return g;
}

auto Graph::average_degree() const noexcept -> double
{
    return n_ == 0 ? 0.0 : 2.0 * static_cast<double>(m_) / n_;
}

auto Graph::edges() const -> std::vector<Edge>
{
    std::vector<Edge> out;
    out.reserve(static_cast<std::size_t>(m_));
    for (int u = 0; u < n_; ++u)
        for (int v : neighbors(u))
            if (u < v)
                out.emplace_back(u, v);
    return out;
}

auto Graph::neighborhood_of(const VertexSet& s) const -> VertexSet
{
    VertexSet out(n_);
    for (int v : s)
        out |= neighborhood(v);
    return out;
}

auto Graph::is_independent(const VertexSet& s) const -> bool
{
    for (int v : s)
        if (neighborhood(v).intersects(s))
            return false;
    return true;
}

auto Graph::induced_edge_count(const VertexSet& s) const -> std::int64_t
{
    std::int64_t twice = 0;
    for (int v : s)
        twice += neighborhood(v).intersection_size(s);
    return twice / 2;
}

auto induced_subgraph(const Graph& g, const VertexSet& s) -> InducedSubgraph
{
    InducedSubgraph out;
    out.to_parent = s.to_vector();
    std::vector<int> local(static_cast<std::size_t>(g.num_vertices()), -1);
    for (std::size_t i = 0; i < out.to_parent.size(); ++i)
        local[static_cast<std::size_t>(out.to_parent[i])] = static_cast<int>(i);
    std::vector<Edge> edges;
    for (int u : s)
        for (int v : g.neighbors(u))
            if (u < v && s.contains(v))
                edges.emplace_back(local[static_cast<std::size_t>(u)], local[static_cast<std::size_t>(v)]);
    out.graph = Graph::from_edges(static_cast<int>(out.to_parent.size()), edges);
    return out;
}

// ---------------------------------------------------------------------------

auto Hypergraph::from_edges(int n, int r, std::vector<std::vector<int>> edges) -> Hypergraph
{
    if (n < 0 || r < 1)
        throw PreconditionError("hypergraph needs n >= 0 and r >= 1");
    Hypergraph h;
    h.n_ = n;
    h.r_ = r;
    h.incidence_.assign(static_cast<std::size_t>(n), {});
    std::set<std::vector<int>> seen;
    for (auto& e : edges) {
        std::sort(e.begin(), e.end());
        if (static_cast<int>(e.size()) != r)
            throw PreconditionError("edge of size " + std::to_string(e.size()) + " in " + std::to_string(r) + "-uniform hypergraph");
        if (std::adjacent_find(e.begin(), e.end()) != e.end())
            throw PreconditionError("edge with a repeated vertex");
        if (e.front() < 0 || e.back() >= n)
            throw PreconditionError("edge vertex out of range");
        if (!seen.insert(e).second)
            throw PreconditionError("duplicate edge");
        const std::size_t id = h.edges_.size();
        for (int v : e)
            h.incidence_[static_cast<std::size_t>(v)].push_back(id);
        h.edges_.push_back(std::move(e));
    }
    return h;
}

auto Hypergraph::from_graph(const Graph& g) -> Hypergraph
{
    std::vector<std::vector<int>> edges;
    for (auto [u, v] : g.edges())
        edges.push_back({u, v});
    return from_edges(g.num_vertices(), 2, std::move(edges));
}

auto Hypergraph::codegree(std::span<const int> t) const -> std::int64_t
{
    if (t.empty())
        return num_edges();
    std::int64_t count = 0;
    for (std::size_t id : incident(t.front())) {
        const auto& e = edges_[id];
        bool all = std::all_of(t.begin(), t.end(), [&](int v) { return std::binary_search(e.begin(), e.end(), v); });
        count += all ? 1 : 0;
    }
    return count;
}

auto Hypergraph::is_independent(const VertexSet& s) const -> bool
{
    for (const auto& e : edges_)
        if (std::all_of(e.begin(), e.end(), [&](int v) { return s.contains(v); }))
            return false;
    return true;
}

auto Hypergraph::induced_edge_count(const VertexSet& s) const -> std::int64_t
{
    std::int64_t c = 0;
    for (const auto& e : edges_)
        if (std::all_of(e.begin(), e.end(), [&](int v) { return s.contains(v); }))
            ++c;
    return c;
}

auto Hypergraph::edge_subhypergraph(std::span<const std::size_t> edge_ids) const -> Hypergraph
{
    std::vector<std::vector<int>> edges;
    edges.reserve(edge_ids.size());
    for (std::size_t id : edge_ids)
        edges.push_back(edges_[id]);
    return from_edges(n_, r_, std::move(edges));
}

auto max_codegree(const Hypergraph& h, int i) -> std::int64_t
{
    const int r = h.uniformity();
    if (i < 1 || i > r)
        throw ParameterError("co-degree index " + std::to_string(i) + " outside 1.." + std::to_string(r));
    std::map<std::vector<int>, std::int64_t> counts;
    std::vector<int> subset(static_cast<std::size_t>(i));
    for (const auto& e : h.edges()) {
        // Enumerate the i-subsets of e via a selector permutation.
        std::vector<bool> pick(static_cast<std::size_t>(r), false);
        std::fill(pick.begin(), pick.begin() + i, true);
        do {
            std::size_t k = 0;
            for (int j = 0; j < r; ++j)
                if (pick[static_cast<std::size_t>(j)])
                    subset[k++] = e[static_cast<std::size_t>(j)];
            ++counts[subset];
        } while (std::prev_permutation(pick.begin(), pick.end()));
    }
    std::int64_t best = 0;
    for (const auto& [t, c] : counts)
        best = std::max(best, c);
    return best;
}

// ---------------------------------------------------------------------------

namespace {

auto parse_int(const std::string& token, std::size_t line, const char* what) -> long long
{
    try {
        std::size_t used = 0;
        long long v = std::stoll(token, &used);
        if (used != token.size())
            throw ParseError(line, std::string("malformed ") + what + " '" + token + "'");
        return v;
    } catch (const std::logic_error&) {
        throw ParseError(line, std::string("malformed ") + what + " '" + token + "'");
    }
}

} // namespace

auto parse_dimacs_graph(std::istream& in) -> Graph
{
    std::string raw;
    std::size_t line_no = 0;
    long long n = -1;
    long long declared_m = -1;
    std::vector<Edge> edges;
    std::set<Edge> seen;
    while (std::getline(in, raw)) {
        ++line_no;
        std::istringstream ls(raw);
        std::string tag;
        if (!(ls >> tag) || tag == "c")
            continue;
        if (tag == "p") {
            std::string format, ns, ms, extra;
            if (n >= 0)
                throw ParseError(line_no, "second problem line");
            if (!(ls >> format >> ns >> ms) || (ls >> extra))
                throw ParseError(line_no, "malformed header, expected 'p edge <n> <m>'");
            if (format != "edge" && format != "col")
                throw ParseError(line_no, "unsupported format '" + format + "'");
            n = parse_int(ns, line_no, "vertex count");
            declared_m = parse_int(ms, line_no, "edge count");
            if (n < 0 || declared_m < 0)
                throw ParseError(line_no, "negative count in header");
        } else if (tag == "e") {
            if (n < 0)
                throw ParseError(line_no, "edge before header");
            std::string us, vs, extra;
            if (!(ls >> us >> vs) || (ls >> extra))
                throw ParseError(line_no, "malformed edge line");
            long long u = parse_int(us, line_no, "vertex id");
            long long v = parse_int(vs, line_no, "vertex id");
            if (u < 1 || u > n || v < 1 || v > n)
                throw ParseError(line_no, "vertex id out of range");
            if (u == v)
                throw ParseError(line_no, "self-loop");
            Edge e{static_cast<int>(std::min(u, v) - 1), static_cast<int>(std::max(u, v) - 1)};
            if (!seen.insert(e).second)
                throw ParseError(line_no, "duplicate edge");
            edges.push_back(e);
        } else {
            throw ParseError(line_no, "unexpected line tag '" + tag + "'");
        }
    }
    if (n < 0)
        throw ParseError(line_no, "missing 'p edge' header");
    if (static_cast<long long>(edges.size()) != declared_m)
        throw ParseError(line_no, "header declares " + std::to_string(declared_m) + " edges, found " + std::to_string(edges.size()));
    return Graph::from_edges(static_cast<int>(n), edges);
}

auto parse_dimacs_graph(std::string_view text) -> Graph
{
    std::istringstream in{std::string(text)};
    return parse_dimacs_graph(in);
}

auto to_dimacs(const Graph& g) -> std::string
{
    std::ostringstream out;
    out << "p edge " << g.num_vertices() << ' ' << g.num_edges() << '\n';
    for (auto [u, v] : g.edges())
        out << "e " << u + 1 << ' ' << v + 1 << '\n';
    return out.str();
}

auto to_json(const Graph& g) -> nlohmann::json
{
    nlohmann::json edges = nlohmann::json::array();
    for (auto [u, v] : g.edges())
        edges.push_back({u, v});
    return {{"n", g.num_vertices()}, {"edges", edges}};
}

auto graph_from_json(const nlohmann::json& j) -> Graph
{
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges"))
        edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    return Graph::from_edges(j.at("n").get<int>(), edges);
}

auto to_json(const Hypergraph& h) -> nlohmann::json
{
    return {{"n", h.num_vertices()}, {"r", h.uniformity()}, {"edges", h.edges()}};
}

auto hypergraph_from_json(const nlohmann::json& j) -> Hypergraph
{
    return Hypergraph::from_edges(j.at("n").get<int>(), j.at("r").get<int>(),
                                  j.at("edges").get<std::vector<std::vector<int>>>());
}

auto to_json(const VertexSet& s) -> nlohmann::json
{
    return s.to_vector();
}

// ---------------------------------------------------------------------------

auto random_regular_graph(int n, int d, std::uint64_t seed) -> Graph
{
    if (n <= 0 || d < 0 || d >= n)
        throw ParameterError("random_regular_graph needs 0 <= d < n");
    if ((static_cast<long long>(n) * d) % 2 != 0)
        throw ParameterError("n*d must be even");
    Rng rng(seed);
    while (true) {
        // Pairing model: every vertex owns d points; points are matched one
        // pair at a time, rejecting pairs that would create a loop or a
        // multi-edge. A dead end restarts the whole pairing.
        std::vector<int> points;
        points.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(d));
        for (int v = 0; v < n; ++v)
            for (int j = 0; j < d; ++j)
                points.push_back(v);
        std::vector<VertexSet> adj(static_cast<std::size_t>(n), VertexSet(n));
        std::vector<Edge> edges;
        bool stuck = false;
        while (!points.empty() && !stuck) {
            bool placed = false;
            for (int attempt = 0; attempt < 64 && !placed; ++attempt) {
                auto i = static_cast<std::size_t>(uniform_below(rng, points.size()));
                auto j = static_cast<std::size_t>(uniform_below(rng, points.size()));
                int u = points[i];
                int v = points[j];
                if (i == j || u == v || adj[static_cast<std::size_t>(u)].contains(v))
                    continue;
                adj[static_cast<std::size_t>(u)].insert(v);
                adj[static_cast<std::size_t>(v)].insert(u);
                edges.emplace_back(std::min(u, v), std::max(u, v));
                if (i < j)
                    std::swap(i, j);
                points.erase(points.begin() + static_cast<std::ptrdiff_t>(i));
                points.erase(points.begin() + static_cast<std::ptrdiff_t>(j));
                placed = true;
            }
            if (!placed) {
                // Exhaustive check before giving up on this pairing.
                bool any = false;
                for (std::size_t i = 0; i < points.size() && !any; ++i)
                    for (std::size_t j = i + 1; j < points.size() && !any; ++j)
                        any = points[i] != points[j] && !adj[static_cast<std::size_t>(points[i])].contains(points[j]);
                stuck = !any;
            }
        }
        if (!stuck) {
            std::sort(edges.begin(), edges.end());
            return Graph::from_edges(n, edges);
        }
    }
}

auto random_gnp_graph(int n, double p, std::uint64_t seed) -> Graph
{
    Rng rng(seed);
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (uniform_unit(rng) < p)
                edges.emplace_back(u, v);
    return Graph::from_edges(n, edges);
}

auto random_uniform_hypergraph(int n, int r, int m, std::uint64_t seed) -> Hypergraph
{
    if (r < 1 || r > n)
        throw ParameterError("random_uniform_hypergraph needs 1 <= r <= n");
    Rng rng(seed);
    std::set<std::vector<int>> chosen;
    // Cap at the number of available r-sets.
    double available = 1;
    for (int i = 0; i < r; ++i)
        available = available * (n - i) / (i + 1);
    const auto target = static_cast<std::size_t>(std::min<double>(m, available));
    while (chosen.size() < target) {
        std::vector<int> e;
        while (static_cast<int>(e.size()) < r) {
            int v = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(n)));
            if (std::find(e.begin(), e.end(), v) == e.end())
                e.push_back(v);
        }
        std::sort(e.begin(), e.end());
        chosen.insert(std::move(e));
    }
    return Hypergraph::from_edges(n, r, {chosen.begin(), chosen.end()});
}

auto cycle_graph(int n) -> Graph
{
    std::vector<Edge> edges;
    if (n >= 3)
        for (int v = 0; v < n; ++v)
            edges.emplace_back(std::min(v, (v + 1) % n), std::max(v, (v + 1) % n));
    else if (n == 2)
        edges.emplace_back(0, 1);
    return Graph::from_edges(n, edges);
}

auto complete_graph(int n) -> Graph
{
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            edges.emplace_back(u, v);
    return Graph::from_edges(n, edges);
}

auto empty_graph(int n) -> Graph
{
    return Graph::from_edges(n, {});
}

auto petersen_graph() -> Graph
{
    std::vector<Edge> edges;
    for (int i = 0; i < 5; ++i) {
        edges.emplace_back(i, (i + 1) % 5);      // outer 5-cycle
        edges.emplace_back(i, i + 5);            // spokes
        edges.emplace_back(5 + i, 5 + (i + 2) % 5); // inner pentagram
    }
    for (auto& [u, v] : edges)
        if (u > v)
            std::swap(u, v);
    return Graph::from_edges(10, edges);
}

} // namespace hcm
