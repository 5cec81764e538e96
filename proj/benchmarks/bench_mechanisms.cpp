#include <benchmark/benchmark.h>

#include "cakecut/experiments.hpp"

using namespace cakecut;

namespace {

void BM_RecoverStructure(benchmark::State& state) {
    auto inst = random_instance(static_cast<int>(state.range(0)), 7, true);
    for (auto _ : state) {
        RwOracle oracle(inst);
        for (int i = 0; i < inst.n(); ++i) benchmark::DoNotOptimize(oracle.recover_structure(i));
    }
}
BENCHMARK(BM_RecoverStructure)->Arg(4)->Arg(16)->Arg(64);

void BM_WangWu(benchmark::State& state) {
    auto inst = random_instance(static_cast<int>(state.range(0)), 11, false);
    for (auto _ : state) benchmark::DoNotOptimize(run_ww(inst));
}
BENCHMARK(BM_WangWu)->Arg(4)->Arg(16)->Arg(64);

void BM_ModifiedWangWu(benchmark::State& state) {
    auto inst = random_instance(static_cast<int>(state.range(0)), 11, false);
    for (auto _ : state) benchmark::DoNotOptimize(run_mww(inst));
}
BENCHMARK(BM_ModifiedWangWu)->Arg(4)->Arg(16)->Arg(64);

void BM_LeftmostLeaves(benchmark::State& state) {
    auto inst = random_instance(static_cast<int>(state.range(0)), 13, true);
    for (auto _ : state) benchmark::DoNotOptimize(run_ll(inst));
}
BENCHMARK(BM_LeftmostLeaves)->Arg(4)->Arg(16)->Arg(64);

void BM_UtilitarianEnvelope(benchmark::State& state) {
    auto inst = random_instance(static_cast<int>(state.range(0)), 17, false);
    for (auto _ : state) benchmark::DoNotOptimize(run_envelope_um(inst));
}
BENCHMARK(BM_UtilitarianEnvelope)->Arg(4)->Arg(16)->Arg(64);

void BM_DominanceOracle(benchmark::State& state) {
    auto inst = random_instance(3, 23, true);
    auto ww = run_ww(inst);
    for (auto _ : state)
        benchmark::DoNotOptimize(dominance_oracle(inst, ww.allocation, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_DominanceOracle)->Arg(32)->Arg(64);

}  // namespace

BENCHMARK_MAIN();
