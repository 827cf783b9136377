#include <benchmark/benchmark.h>

#include "hcm/coloring.hpp"
#include "hcm/containers.hpp"
#include "hcm/extsum.hpp"
#include "hcm/mis.hpp"
#include "hcm/sat.hpp"

using namespace hcm;

namespace {

void BM_RegularContainers(benchmark::State& state)
{
    const int n = static_cast<int>(state.range(0));
    auto g = random_regular_graph(n, 8, 1);
    BuildOptions opts;
    opts.force = true;
    std::size_t count = 0;
    for (auto _ : state) {
        auto c = build_regular_collection(g, 0.3, opts);
        count = c.containers.size();
        benchmark::DoNotOptimize(count);
    }
    state.counters["containers"] = static_cast<double>(count);
}
BENCHMARK(BM_RegularContainers)->DenseRange(16, 24, 4)->Unit(benchmark::kMillisecond);

void BM_MisBase(benchmark::State& state)
{
    auto g = random_regular_graph(static_cast<int>(state.range(0)), 8, 2);
    std::uint64_t nodes = 0;
    for (auto _ : state) {
        auto r = mis_base(g);
        nodes = r.stats.nodes;
        benchmark::DoNotOptimize(r.size);
    }
    state.counters["nodes"] = static_cast<double>(nodes);
}
BENCHMARK(BM_MisBase)->DenseRange(20, 40, 10)->Unit(benchmark::kMillisecond);

void BM_MisContainers(benchmark::State& state)
{
    const int n = static_cast<int>(state.range(0));
    auto g = random_regular_graph(n, 8, 2);
    MisParams p;
    p.mode = MisMode::Containers;
    int largest = 0;
    for (auto _ : state) {
        auto r = mis_containers(g, p);
        largest = r.stats.largest_subproblem;
        benchmark::DoNotOptimize(r.size);
    }
    state.counters["largest_fraction"] = static_cast<double>(largest) / n;
}
BENCHMARK(BM_MisContainers)->DenseRange(16, 24, 4)->Unit(benchmark::kMillisecond);

void BM_ColoringBaseline(benchmark::State& state)
{
    auto g = random_regular_graph(static_cast<int>(state.range(0)), 4, 3);
    ColoringConfig cfg;
    cfg.mode = ColoringMode::Baseline;
    for (auto _ : state)
        benchmark::DoNotOptimize(solve_kcoloring(g, 3, cfg).colorable);
}
BENCHMARK(BM_ColoringBaseline)->DenseRange(12, 20, 4)->Unit(benchmark::kMillisecond);

void BM_ExtSum(benchmark::State& state)
{
    auto inst = random_extsum(16, 2, 10, -9, 9, 4);
    const bool fast = state.range(0) != 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(fast ? eval_k2(inst) : eval_naive(inst));
}
BENCHMARK(BM_ExtSum)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_DenseSat(benchmark::State& state)
{
    const int n = static_cast<int>(state.range(0));
    auto phi = random_kcnf(n, 30 * n, 3, 5);
    SatConfig cfg;
    cfg.mode = state.range(1) ? SatMode::Containers : SatMode::Dpll;
    for (auto _ : state)
        benchmark::DoNotOptimize(solve_ksat_dense(phi, StructureParams{}, cfg).satisfiable);
}
BENCHMARK(BM_DenseSat)->ArgsProduct({{14, 18}, {0, 1}})->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
