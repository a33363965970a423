#include "hypercongruence/closest_pair.hpp"
#include "hypercongruence/harness.hpp"
#include "hypercongruence/pipeline.hpp"

#include <benchmark/benchmark.h>

using namespace hcong;

static void BM_Pipeline(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    CongruentPair pr = gen_congruent_pair(n, 17 + n);
    for (auto _ : state) {
        Verdict v = congruence_test_4d(pr.A, pr.B);
        if (!v.congruent) state.SkipWithError("pair rejected");
        benchmark::DoNotOptimize(v.rotation.data());
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Pipeline)->RangeMultiplier(2)->Range(1 << 10, 1 << 17)->Unit(benchmark::kMillisecond)->Complexity(benchmark::oNLogN);

static void BM_ClosestPair(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    std::vector<Vec4> pts = gen_congruent_pair(n, 31 + n).A.points;
    for (auto _ : state) {
        ClosestPairGraph g = closest_pair_graph(pts);
        benchmark::DoNotOptimize(g.delta);
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ClosestPair)->RangeMultiplier(2)->Range(1 << 10, 1 << 17)->Unit(benchmark::kMillisecond)->Complexity(benchmark::oNLogN);

static void BM_TorusGrid(benchmark::State& state)
{
    const int p = static_cast<int>(state.range(0));
    CongruentPair pr = make_congruent_pair(gen_torus_grid(p, p, 0.6), 5);
    for (auto _ : state) {
        Verdict v = congruence_test_4d(pr.A, pr.B);
        if (!v.congruent) state.SkipWithError("pair rejected");
        benchmark::DoNotOptimize(v.rotation.data());
    }
}
BENCHMARK(BM_TorusGrid)->Arg(30)->Arg(100)->Arg(300)->Unit(benchmark::kMillisecond);

static void BM_Helix(benchmark::State& state)
{
    const int l = static_cast<int>(state.range(0));
    CongruentPair pr = make_congruent_pair(gen_orbit_helix(l, 2, 0.8, 3), 9);
    for (auto _ : state) {
        Verdict v = congruence_test_4d(pr.A, pr.B);
        if (!v.congruent) state.SkipWithError("pair rejected");
        benchmark::DoNotOptimize(v.rotation.data());
    }
}
BENCHMARK(BM_Helix)->Arg(2000)->Arg(20000)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
