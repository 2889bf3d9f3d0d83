#include <cmath>
#include <vector>

#include <benchmark/benchmark.h>

#include "nnst/dgp.hpp"
#include "nnst/localtime.hpp"
#include "nnst/ustat.hpp"

namespace {

nnst::SamplePath sample(std::size_t n) {
    nnst::SimulationSpec spec;
    spec.n = n;
    spec.innovations.r = 0.5;
    return nnst::simulate_path(spec, 42);
}

void BM_PairSumsReference(benchmark::State& state) {
    const auto p = sample(static_cast<std::size_t>(state.range(0)));
    const double h = std::pow(static_cast<double>(p.n), -1.0 / 3.0);
    for (auto _ : state) benchmark::DoNotOptimize(nnst::reference::pair_sums(p.u, p.x, nnst::Kernel(), h));
    state.SetComplexityN(state.range(0));
}

void BM_PairSumsSerial(benchmark::State& state) {
    const auto p = sample(static_cast<std::size_t>(state.range(0)));
    const double h = std::pow(static_cast<double>(p.n), -1.0 / 3.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(nnst::pair_sums(p.u, p.x, nnst::Kernel(), h, nnst::Execution::serial));
    state.SetComplexityN(state.range(0));
}

void BM_PairSumsParallel(benchmark::State& state) {
    const auto p = sample(static_cast<std::size_t>(state.range(0)));
    const double h = std::pow(static_cast<double>(p.n), -1.0 / 3.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(nnst::pair_sums(p.u, p.x, nnst::Kernel(), h, nnst::Execution::parallel));
    state.SetComplexityN(state.range(0));
}

void BM_IntersectionReference(benchmark::State& state) {
    const auto g = nnst::simulate_G(0.0, static_cast<std::size_t>(state.range(0)), 7);
    const double eps = nnst::default_window(g);
    for (auto _ : state) benchmark::DoNotOptimize(nnst::reference::intersection_L(g, 1.0, 0.0, eps));
}

void BM_IntersectionSorted(benchmark::State& state) {
    const auto g = nnst::simulate_G(0.0, static_cast<std::size_t>(state.range(0)), 7);
    const double eps = nnst::default_window(g);
    for (auto _ : state)
        benchmark::DoNotOptimize(nnst::intersection_L(g, 1.0, 0.0, eps, nnst::Execution::parallel));
}

}  // namespace

BENCHMARK(BM_PairSumsReference)->Arg(500)->Arg(2000);
BENCHMARK(BM_PairSumsSerial)->Arg(500)->Arg(2000);
BENCHMARK(BM_PairSumsParallel)->Arg(500)->Arg(2000);
BENCHMARK(BM_IntersectionReference)->Arg(5000)->Arg(20000);
BENCHMARK(BM_IntersectionSorted)->Arg(5000)->Arg(20000);

BENCHMARK_MAIN();
