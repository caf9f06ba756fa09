#include <benchmark/benchmark.h>

#include "codp/minimize.hpp"
#include "codp/penalty.hpp"
#include "codp/tabu.hpp"

using namespace codp;

namespace {

Instance make_bench_instance(int n) {
    RandomSource rng(99);
    std::vector<double> radii(n);
    for (double& r : radii) r = rng.uniform(1.0, 5.0);
    double max_r = 0.0;
    for (double r : radii) max_r = std::max(max_r, r);
    return make_instance(radii, ContainerSpec::strip(4.0 * max_r));
}

void BM_PenaltyEvaluate(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    Instance inst = make_bench_instance(n);
    RandomSource rng(7);
    Layout lay = random_layout(inst, 2.0 * n, rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(evaluate(inst, lay).energy);
    }
    state.SetComplexityN(n);
}

void BM_ScreeningPolish(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    Instance inst = make_bench_instance(n);
    RandomSource rng(7);
    Layout lay = random_layout(inst, 2.0 * n, rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(polish(inst, lay, MinimizerConfig::screening()).energy);
    }
}

void BM_NeighborhoodSweep(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    Instance inst = make_bench_instance(n);
    RandomSource rng(7);
    Layout lay = polish(inst, random_layout(inst, 2.0 * n, rng),
                        MinimizerConfig::screening()).layout;
    TabuState tabu_state(n);
    tabu_state.cur_iter = 1;
    for (auto _ : state) {
        auto cands = neighborhood(inst, lay, tabu_state, 1e300, TabuConfig{});
        benchmark::DoNotOptimize(cands.size());
    }
}

}  // namespace

BENCHMARK(BM_PenaltyEvaluate)->Arg(20)->Arg(50)->Arg(100)->Arg(200)->Complexity();
BENCHMARK(BM_ScreeningPolish)->Arg(20)->Arg(50);
BENCHMARK(BM_NeighborhoodSweep)->Arg(20);

BENCHMARK_MAIN();
