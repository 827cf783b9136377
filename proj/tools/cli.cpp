#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "hcm/cnf.hpp"
#include "hcm/coloring.hpp"
#include "hcm/containers.hpp"
#include "hcm/errors.hpp"
#include "hcm/extsum.hpp"
#include "hcm/graph.hpp"
#include "hcm/mis.hpp"
#include "hcm/partition.hpp"
#include "hcm/sat.hpp"

namespace hcm::cli {

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

struct Exit {
    int code;
};

auto read_file(const std::string& path) -> std::string
{
    std::ifstream in(path);
    if (!in)
        throw Error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

auto split(const std::string& s, char sep) -> std::vector<std::string>
{
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep))
        out.push_back(cur);
    return out;
}

/// Instance source shared by the graph commands: a DIMACS file or a
/// generator string such as "regular:20:4".
struct GraphSource {
    std::string input;
    std::string gen;
    std::optional<std::uint64_t> seed;

    void attach(CLI::App* app)
    {
        app->add_option("--input", input, "DIMACS edge file");
        app->add_option("--gen", gen, "regular:N:D | gnp:N:P | cycle:N | complete:N | empty:N | petersen");
        app->add_option("--seed", seed, "seed for random generators");
    }

    auto load() const -> Graph
    {
        if (!input.empty() && !gen.empty())
            throw ParameterError("give either --input or --gen");
        if (!input.empty())
            return parse_dimacs_graph(read_file(input));
        if (gen.empty())
            throw ParameterError("an instance is required: --input or --gen");
        auto parts = split(gen, ':');
        const auto& kind = parts[0];
        auto arg = [&](std::size_t i) -> const std::string& {
            if (parts.size() <= i)
                throw ParameterError("generator string '" + gen + "' is missing arguments");
            return parts[i];
        };
        auto need_seed = [&] {
            if (!seed)
                throw ParameterError("--seed is required for generator '" + kind + "'");
            return *seed;
        };
        if (kind == "regular")
            return random_regular_graph(std::stoi(arg(1)), std::stoi(arg(2)), need_seed());
        if (kind == "gnp")
            return random_gnp_graph(std::stoi(arg(1)), std::stod(arg(2)), need_seed());
        if (kind == "cycle")
            return cycle_graph(std::stoi(arg(1)));
        if (kind == "complete")
            return complete_graph(std::stoi(arg(1)));
        if (kind == "empty")
            return empty_graph(std::stoi(arg(1)));
        if (kind == "petersen")
            return petersen_graph();
        throw ParameterError("unknown generator '" + kind + "'");
    }
};

auto graph_stats(const Graph& g) -> json
{
    return {{"n", g.num_vertices()},
            {"m", g.num_edges()},
            {"max_degree", g.max_degree()},
            {"min_degree", g.min_degree()},
            {"regular", g.is_regular()}};
}

auto sets_json(const std::vector<VertexSet>& sets) -> json
{
    json out = json::array();
    for (const auto& s : sets)
        out.push_back(s.to_vector());
    return out;
}

auto elapsed_ms(Clock::time_point start) -> double
{
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// -- containers -------------------------------------------------------------

struct ContainersCmd {
    GraphSource src;
    std::string hypergraph;
    std::string builder = "auto";
    double eps = 0.3;
    std::optional<double> C;
    double sparsity = 0.3;
    double p = 0.5;
    double hC = 1.0;
    double eps_edges = 0.25;
    double M = 4.0;
    bool force = false;
    bool list = false;

    void attach(CLI::App& app)
    {
        auto* cmd = app.add_subcommand("containers", "build a container collection");
        src.attach(cmd);
        cmd->add_option("--hypergraph", hypergraph, "hypergraph JSON file (uses the hypergraph engine)");
        cmd->add_option("--builder", builder, "auto | regular | almost-regular")
            ->check(CLI::IsMember({"auto", "regular", "almost-regular"}));
        cmd->add_option("--eps", eps, "epsilon of the regular builder");
        cmd->add_option("--C", C, "degree ratio for the almost-regular builder");
        cmd->add_option("--sparsity", sparsity, "sparsity of the almost-regular builder");
        cmd->add_option("--p", p, "engine p");
        cmd->add_option("--engine-C", hC, "engine co-degree constant");
        cmd->add_option("--eps-edges", eps_edges, "engine stopping fraction");
        cmd->add_option("--M", M, "engine fingerprint cap multiplier");
        cmd->add_flag("--force", force, "build below the degree threshold");
        cmd->add_flag("--list", list, "include the containers");
    }

    auto run() const -> std::pair<json, int>
    {
        BuildOptions opts;
        opts.force = force;
        opts.keep_fingerprints = false;
        if (!hypergraph.empty()) {
            auto h = hypergraph_from_json(json::parse(read_file(hypergraph)));
            HypergraphContainerParams hp;
            hp.p = p;
            hp.C = hC;
            hp.r = h.uniformity();
            hp.eps_edges = eps_edges;
            hp.M = M;
            auto c = build_hypergraph_collection(h, hp, opts);
            json r = {{"report", collection_report(c)}};
            if (list)
                r["containers"] = sets_json(c.containers);
            return {r, 0};
        }
        const Graph g = src.load();
        ContainerCollection c;
        const bool regular = builder == "regular" || (builder == "auto" && g.is_regular());
        if (regular) {
            c = build_regular_collection(g, eps, opts);
        } else {
            const double ratio = C.value_or(g.num_edges() ? g.max_degree() / g.average_degree() : 1.0);
            c = build_almost_regular_collection(g, ratio, sparsity, opts);
        }
        json r = {{"instance", graph_stats(g)}, {"report", collection_report(c, &g)}};
        if (list)
            r["containers"] = sets_json(c.containers);
        return {r, 0};
    }
};

// -- partition-containers ---------------------------------------------------

struct PartitionCmd {
    GraphSource src;
    int k = 2;
    std::string builder = "auto";
    std::optional<double> C;
    bool force = false;
    bool relaxed = false;
    bool list = false;

    void attach(CLI::App& app)
    {
        auto* cmd = app.add_subcommand("partition-containers", "build partition containers");
        src.attach(cmd);
        cmd->add_option("--k", k, "number of parts")->required();
        cmd->add_option("--builder", builder, "auto | regular | almost-regular")
            ->check(CLI::IsMember({"auto", "regular", "almost-regular"}));
        cmd->add_option("--C", C, "degree ratio for the almost-regular builder");
        cmd->add_flag("--force", force, "build below the degree threshold");
        cmd->add_flag("--relaxed", relaxed, "drop the union size ceiling");
        cmd->add_flag("--list", list, "include the containers");
    }

    auto run() const -> std::pair<json, int>
    {
        const Graph g = src.load();
        PartitionOptions opts;
        opts.force = force;
        opts.ceiling = relaxed ? CeilingPolicy::Relaxed : CeilingPolicy::Strict;
        const bool regular = builder == "regular" || (builder == "auto" && g.is_regular());
        PartitionContainerCollection pc;
        if (regular) {
            pc = build_partition_collection_regular(g, k, opts);
        } else {
            const double ratio = C.value_or(g.num_edges() ? g.max_degree() / g.average_degree() : 1.0);
            pc = build_partition_collection_almost_regular(g, k, ratio, opts);
        }
        json r = {{"instance", graph_stats(g)}, {"report", partition_report(pc)}};
        if (list)
            r["containers"] = sets_json(pc.containers);
        return {r, 0};
    }
};

// -- extsum -----------------------------------------------------------------

struct ExtSumCmd {
    CLI::App* eval = nullptr;
    CLI::App* gen = nullptr;
    CLI::App* hyper = nullptr;
    std::string input;
    std::string algo = "auto";
    int universe = 10;
    int count = 3;
    int max_subset = 6;
    int lo = -9;
    int hi = 9;
    std::optional<std::uint64_t> seed;
    int k = 3;

    void attach(CLI::App& app)
    {
        auto* cmd = app.add_subcommand("extsum", "Extensions-Sum instances");
        cmd->require_subcommand(1);
        eval = cmd->add_subcommand("eval", "evaluate an instance");
        eval->add_option("--input", input, "instance JSON")->required();
        eval->add_option("--algo", algo, "auto | naive | disjoint | k2 | k3")
            ->check(CLI::IsMember({"auto", "naive", "disjoint", "k2", "k3"}));
        gen = cmd->add_subcommand("gen", "random instance");
        gen->add_option("--universe", universe);
        gen->add_option("--count", count);
        gen->add_option("--max-subset", max_subset);
        gen->add_option("--lo", lo);
        gen->add_option("--hi", hi);
        gen->add_option("--seed", seed)->required();
        hyper = cmd->add_subcommand("hyperclique", "reduce k-hyperclique counting and evaluate");
        hyper->add_option("--input", input, "hypergraph JSON")->required();
        hyper->add_option("--k", k, "clique size")->required();
    }

    auto run() const -> std::pair<json, int>
    {
        if (gen->parsed())
            return {to_json(random_extsum(universe, count, max_subset, lo, hi, *seed)), 0};
        if (hyper->parsed()) {
            auto h = hypergraph_from_json(json::parse(read_file(input)));
            auto inst = hyperclique_to_extsum(h, k);
            BigInt value = eval_naive(inst, 30);
            return {{{"value", bigint_to_json(value)},
                     {"cliques", count_hypercliques(h, k)},
                     {"variables", inst.universe},
                     {"subsets", inst.size()}},
                    0};
        }
        auto doc = json::parse(read_file(input));
        // Accept a full report written by `extsum gen` as well as a bare instance.
        if (doc.is_object() && doc.contains("command") && doc.contains("result"))
            doc = doc.at("result");
        auto inst = extsum_from_json(doc);
        json r = {{"algo", algo}, {"universe", inst.universe}, {"subsets", inst.size()}};
        BigInt value;
        if (algo == "naive") {
            value = eval_naive(inst);
        } else if (algo == "disjoint") {
            value = eval_disjoint(inst);
        } else if (algo == "k2") {
            std::uint64_t iterations = 0;
            value = eval_k2(inst, &iterations);
            r["iterations"] = iterations;
        } else if (algo == "k3") {
            value = eval_k3(inst);
        } else {
            value = eval_auto(inst);
        }
        r["value"] = bigint_to_json(value);
        return {r, 0};
    }
};

// -- color ------------------------------------------------------------------

struct ColorCmd {
    GraphSource src;
    int k = 3;
    std::string mode = "auto";
    bool certificate = false;
    bool no_force = false;

    void attach(CLI::App& app)
    {
        auto* cmd = app.add_subcommand("color", "decide k-colorability (exit 1 when not colorable)");
        src.attach(cmd);
        cmd->add_option("--k", k, "number of colors")->required();
        cmd->add_option("--mode", mode, "auto | baseline | containers")
            ->check(CLI::IsMember({"auto", "baseline", "containers"}));
        cmd->add_flag("--certificate", certificate, "return a coloring");
        cmd->add_flag("--no-force", no_force, "containers mode: fall back below the degree threshold");
    }

    auto run(int workers) const -> std::pair<json, int>
    {
        const Graph g = src.load();
        ColoringConfig cfg;
        cfg.mode = mode == "baseline" ? ColoringMode::Baseline
                   : mode == "containers" ? ColoringMode::Containers
                                          : ColoringMode::Auto;
        cfg.certificate = certificate;
        cfg.force = !no_force;
        cfg.workers = workers;
        auto r = solve_kcoloring(g, k, cfg);
        return {{{"instance", graph_stats(g)}, {"k", k}, {"result", to_json(r)}}, r.colorable ? 0 : 1};
    }
};

// -- mis --------------------------------------------------------------------

struct MisCmd {
    GraphSource src;
    std::string mode = "auto";
    double eps = 0.3;
    std::optional<double> C;

    void attach(CLI::App& app)
    {
        auto* cmd = app.add_subcommand("mis", "maximum independent set");
        src.attach(cmd);
        cmd->add_option("--mode", mode, "auto | base | containers")->check(CLI::IsMember({"auto", "base", "containers"}));
        cmd->add_option("--eps", eps, "container epsilon");
        cmd->add_option("--C", C, "degree ratio for irregular graphs");
    }

    auto run(int workers) const -> std::pair<json, int>
    {
        const Graph g = src.load();
        MisParams p;
        p.mode = mode == "base" ? MisMode::Base : mode == "containers" ? MisMode::Containers : MisMode::Auto;
        p.epsilon = eps;
        p.C = C;
        p.workers = workers;
        auto r = mis_containers(g, p);
        json out = to_json(r);
        out["instance"] = graph_stats(g);
        return {out, 0};
    }
};

// -- sat --------------------------------------------------------------------

struct SatCmd {
    std::string input;
    std::string gen;
    std::optional<std::uint64_t> seed;
    std::string mode = "auto";
    double D = 10.0;
    double C = 4.0;
    double eps = 0.3;
    double eps_edges = 0.5;
    double M = 1.0;

    void attach(CLI::App& app)
    {
        auto* cmd = app.add_subcommand("sat", "dense k-SAT (exit 1 when unsatisfiable)");
        cmd->add_option("--input", input, "DIMACS CNF file");
        cmd->add_option("--gen", gen, "kcnf:N:M:K | planted:N:M:K | block:N:M:B:K");
        cmd->add_option("--seed", seed, "seed for generators");
        cmd->add_option("--mode", mode, "auto | dpll | containers")->check(CLI::IsMember({"auto", "dpll", "containers"}));
        cmd->add_option("--D", D, "structure density");
        cmd->add_option("--C", C, "structure spread constant");
        cmd->add_option("--eps", eps, "co-degree exponent");
        cmd->add_option("--eps-edges", eps_edges, "engine stopping fraction");
        cmd->add_option("--M", M, "engine fingerprint cap multiplier");
    }

    auto load() const -> CnfFormula
    {
        if (!input.empty() && !gen.empty())
            throw ParameterError("give either --input or --gen");
        if (!input.empty())
            return parse_dimacs_cnf(read_file(input));
        if (gen.empty())
            throw ParameterError("an instance is required: --input or --gen");
        if (!seed)
            throw ParameterError("--seed is required for generators");
        auto parts = split(gen, ':');
        auto num = [&](std::size_t i) {
            if (parts.size() <= i)
                throw ParameterError("generator string '" + gen + "' is missing arguments");
            return std::stoi(parts[i]);
        };
        if (parts[0] == "kcnf")
            return random_kcnf(num(1), num(2), num(3), *seed);
        if (parts[0] == "planted")
            return planted_kcnf(num(1), num(2), num(3), *seed);
        if (parts[0] == "block")
            return planted_block_kcnf(num(1), num(2), num(3), num(4), *seed);
        throw ParameterError("unknown generator '" + parts[0] + "'");
    }

    auto run(int workers) const -> std::pair<json, int>
    {
        const CnfFormula phi = load();
        StructureParams sp{D, C, eps};
        SatConfig cfg;
        cfg.mode = mode == "dpll" ? SatMode::Dpll : mode == "containers" ? SatMode::Containers : SatMode::Auto;
        cfg.workers = workers;
        cfg.eps_edges = eps_edges;
        cfg.M = M;
        auto r = solve_ksat_dense(phi, sp, cfg);
        json out = to_json(r);
        out["instance"] = {{"variables", phi.num_vars()}, {"clauses", phi.num_clauses()}, {"width", phi.width()}};
        return {out, r.satisfiable ? 0 : 1};
    }
};

// -- bench ------------------------------------------------------------------

struct BenchCmd {
    std::string family = "regular";
    int n_from = 12;
    int n_to = 20;
    int step = 2;
    int d = 8;
    int k = 3;
    double density = 4.0;
    std::uint64_t seed = 0;
    double eps = 0.3;

    void attach(CLI::App& app)
    {
        auto* cmd = app.add_subcommand("bench", "sweep n over an instance family and report counters");
        cmd->add_option("--family", family, "regular | kcnf")->check(CLI::IsMember({"regular", "kcnf"}));
        cmd->add_option("--n-from", n_from);
        cmd->add_option("--n-to", n_to);
        cmd->add_option("--step", step)->check(CLI::PositiveNumber);
        cmd->add_option("--d", d, "degree (regular)");
        cmd->add_option("--k", k, "colors (regular) or clause width (kcnf)");
        cmd->add_option("--density", density, "clauses per variable (kcnf)");
        cmd->add_option("--seed", seed)->required();
        cmd->add_option("--eps", eps);
    }

    auto run(int workers) const -> std::pair<json, int>
    {
        json rows = json::array();
        for (int n = n_from; n <= n_to; n += step) {
            const auto s = seed + static_cast<std::uint64_t>(n);
            json row = {{"n", n}};
            if (family == "regular") {
                if (n * d % 2 != 0 || d >= n)
                    continue;
                const Graph g = random_regular_graph(n, d, s);
                auto t = Clock::now();
                MisParams mp;
                mp.mode = MisMode::Containers;
                mp.epsilon = eps;
                mp.workers = workers;
                auto mc = mis_containers(g, mp);
                row["mis_containers_ms"] = elapsed_ms(t);
                t = Clock::now();
                auto mb = mis_base(g);
                row["mis_base_ms"] = elapsed_ms(t);
                row["mis"] = {{"size", mc.size},
                              {"containers", mc.stats.containers_total},
                              {"largest_subproblem", mc.stats.largest_subproblem},
                              {"largest_fraction", static_cast<double>(mc.stats.largest_subproblem) / n},
                              {"container_nodes", mc.stats.nodes},
                              {"base_nodes", mb.stats.nodes}};
                if (n <= 20) {
                    ColoringConfig cc;
                    cc.mode = ColoringMode::Containers;
                    cc.workers = workers;
                    t = Clock::now();
                    auto cr = solve_kcoloring(g, k, cc);
                    row["color_ms"] = elapsed_ms(t);
                    row["color"] = to_json(cr);
                }
            } else {
                const int m = static_cast<int>(density * n);
                const CnfFormula phi = random_kcnf(n, m, k, s);
                SatConfig cfg;
                cfg.mode = SatMode::Containers;
                cfg.workers = workers;
                auto t = Clock::now();
                auto r = solve_ksat_dense(phi, StructureParams{}, cfg);
                row["containers_ms"] = elapsed_ms(t);
                t = Clock::now();
                auto base = dpll(phi);
                row["dpll_ms"] = elapsed_ms(t);
                row["sat"] = to_json(r);
                row["sat"].erase("model");
                row["dpll_nodes"] = base.nodes;
                row["largest_unassigned_fraction"] = static_cast<double>(r.stats.largest_unassigned) / n;
            }
            rows.push_back(row);
        }
        return {{{"family", family}, {"rows", rows}}, 0};
    }
};

auto error_json(const std::string& kind, const std::string& message) -> json
{
    return {{"error", {{"kind", kind}, {"message", message}}}};
}

} // namespace

auto run(const std::vector<std::string>& args, std::ostream& out) -> int
{
    CLI::App app{"hypergraph container algorithms"};
    app.require_subcommand(1);
    int workers = 1;
    app.add_option("--workers", workers, "worker threads")->check(CLI::PositiveNumber);

    ContainersCmd containers;
    PartitionCmd partition;
    ExtSumCmd extsum;
    ColorCmd color;
    MisCmd mis;
    SatCmd sat;
    BenchCmd bench;
    containers.attach(app);
    partition.attach(app);
    extsum.attach(app);
    color.attach(app);
    mis.attach(app);
    sat.attach(app);
    bench.attach(app);

    json command = args;
    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        json r = error_json("usage", e.what());
        r["command"] = command;
        out << r.dump(2) << "\n";
        return 2;
    }

    const auto start = Clock::now();
    json report = {{"command", command}};
    int code = 0;
    try {
        auto* sub = app.get_subcommands().front();
        const std::string name = sub->get_name();
        std::pair<json, int> result;
        if (name == "containers")
            result = containers.run();
        else if (name == "partition-containers")
            result = partition.run();
        else if (name == "extsum")
            result = extsum.run();
        else if (name == "color")
            result = color.run(workers);
        else if (name == "mis")
            result = mis.run(workers);
        else if (name == "sat")
            result = sat.run(workers);
        else
            result = bench.run(workers);
        report["result"] = std::move(result.first);
        code = result.second;
    } catch (const Error& e) {
        report.update(error_json(e.kind(), e.what()));
        code = 2;
    } catch (const nlohmann::json::exception& e) {
        report.update(error_json("parse", e.what()));
        code = 2;
    } catch (const std::exception& e) {
        report.update(error_json("error", e.what()));
        code = 2;
    }
    report["timing_ms"] = elapsed_ms(start);
    out << report.dump(2) << "\n";
    return code;
}

} // namespace hcm::cli
