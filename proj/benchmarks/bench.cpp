#include <benchmark/benchmark.h>

#include "mwcut/dirround.hpp"
#include "mwcut/families.hpp"
#include "mwcut/lp.hpp"
#include "mwcut/noderound.hpp"
#include "mwcut/paths.hpp"
#include "mwcut/random.hpp"

using namespace mwcut;

namespace {

DirectedInstance sized_instance(long m) {
    int n = static_cast<int>(m / 5);
    double density = static_cast<double>(m) / (static_cast<double>(n) * (n - 1));
    return gen_random_dirmc(n, density, 5, 0.5, 2.0, 1234);
}

FractionalSolution scaled_random_x(const DirectedInstance& inst, std::uint64_t seed) {
    FractionalSolution x;
    x.mode = LpMode::Edge;
    x.values.assign(inst.num_arcs(), 0.0);
    std::mt19937_64 rng(seed);
    for (double& v : x.values) v = 0.02 + uniform01(rng);
    return scale_to_feasible(inst, x);
}

void BM_Sssp(benchmark::State& state) {
    auto inst = sized_instance(state.range(0));
    auto x = scaled_random_x(inst, 7);
    for (auto _ : state) {
        DistanceTable t = sssp(inst, x, inst.terminals[0]);
        benchmark::DoNotOptimize(t.dist.data());
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Sssp)->RangeMultiplier(2)->Range(1 << 15, 1 << 19)->Complexity(benchmark::oNLogN);

void BM_HNearest(benchmark::State& state) {
    auto inst = sized_instance(state.range(0));
    auto x = scaled_random_x(inst, 7);
    for (auto _ : state) {
        NearTerminalTable t = h_nearest_terminals(inst, x, 2);
        benchmark::DoNotOptimize(t.dist.data());
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_HNearest)->RangeMultiplier(2)->Range(1 << 15, 1 << 19)->Complexity(benchmark::oNLogN);

void BM_RoundDeterministic(benchmark::State& state) {
    auto inst = sized_instance(state.range(0));
    auto x = scaled_random_x(inst, 7);
    for (auto _ : state) {
        CutSolution cut = round_deterministic(inst, x);
        benchmark::DoNotOptimize(cut.cost);
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_RoundDeterministic)
    ->RangeMultiplier(2)
    ->Range(1 << 15, 1 << 19)
    ->Complexity(benchmark::oNLogN);

void BM_RoundRandomized(benchmark::State& state) {
    auto inst = sized_instance(state.range(0));
    auto x = scaled_random_x(inst, 7);
    std::uint64_t seed = 0;
    for (auto _ : state) {
        CutSolution cut = round_randomized(inst, x, seed++);
        benchmark::DoNotOptimize(cut.cost);
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_RoundRandomized)->RangeMultiplier(2)->Range(1 << 15, 1 << 19);

void BM_SolveLpMwu(benchmark::State& state) {
    auto inst = gen_random_dirmc(static_cast<int>(state.range(0)), 0.1, 4, 0.5, 2.0, 99);
    for (auto _ : state) {
        LpResult res = solve_lp_mwu(inst, 0.05);
        benchmark::DoNotOptimize(res.primal_cost);
    }
}
BENCHMARK(BM_SolveLpMwu)->Arg(20)->Arg(40)->Arg(80);

void BM_RoundNodeDeterministic(benchmark::State& state) {
    auto inst = gen_random_nodemc(static_cast<int>(state.range(0)), 0.05, 5, 0.5, 2.0, 21);
    LpResult lp = solve_node_lp(inst, 0.1);
    for (auto _ : state) {
        CutSolution cut = round_node_deterministic(inst, lp.solution);
        benchmark::DoNotOptimize(cut.cost);
    }
}
BENCHMARK(BM_RoundNodeDeterministic)->Arg(100)->Arg(200)->Arg(400);

}  // namespace

BENCHMARK_MAIN();
