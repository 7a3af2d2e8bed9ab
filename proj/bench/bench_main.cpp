// Serial reference loops against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include "subcubes/moments.hpp"
#include "subcubes/oracle.hpp"
#include "subcubes/weights.hpp"

using namespace subcubes;

namespace {

std::vector<WeightedKernel> kernels_for(const std::vector<unsigned>& rs, unsigned a) {
    std::vector<WeightedKernel> ks;
    enumerate_kernels(rs, a, KernelMode::orbits, [&](const KernelRows& K, Count w) { ks.push_back({K, w}); });
    return ks;
}

const std::vector<unsigned> kSpec{1, 1, 1, 1, 1};

void BM_weights_serial(benchmark::State& state) {
    const auto ks = kernels_for(kSpec, 4);
    const auto parts = enumerate_set_partitions(5);
    for (auto _ : state) {
        WeightTable t(5, 10);
        accumulate_serial(ks, parts, t);
        benchmark::DoNotOptimize(t);
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(ks.size()));
}

void BM_weights_parallel(benchmark::State& state) {
    const auto ks = kernels_for(kSpec, 4);
    const auto parts = enumerate_set_partitions(5);
    for (auto _ : state) {
        WeightTable t(5, 10);
        accumulate_parallel(ks, parts, t, static_cast<int>(state.range(0)));
        benchmark::DoNotOptimize(t);
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(ks.size()));
}

void BM_subsets_serial(benchmark::State& state) {
    const std::vector<unsigned> rs{1, 1, 2};
    for (auto _ : state) benchmark::DoNotOptimize(exact_moment_subsets_serial(4, rs));
}

void BM_subsets_parallel(benchmark::State& state) {
    const std::vector<unsigned> rs{1, 1, 2};
    for (auto _ : state) benchmark::DoNotOptimize(exact_moment_subsets(4, rs));
}

void BM_engine(benchmark::State& state) {
    EngineOptions o;
    o.parallel = state.range(0) != 0;
    for (auto _ : state) benchmark::DoNotOptimize(mixed_moment(MomentSpec{{2, 2, 2, 2}}, o));
}

void BM_count_bitparallel(benchmark::State& state) {
    const auto S = SubsetBitmap::full(static_cast<unsigned>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(count_subcubes(S, 2, CountMethod::bitparallel));
}

void BM_count_naive(benchmark::State& state) {
    const auto S = SubsetBitmap::full(static_cast<unsigned>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(count_subcubes(S, 2, CountMethod::naive));
}

}  // namespace

BENCHMARK(BM_weights_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_weights_parallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_subsets_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_subsets_parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_engine)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_count_bitparallel)->Arg(12)->Arg(16);
BENCHMARK(BM_count_naive)->Arg(12)->Arg(16);

BENCHMARK_MAIN();
