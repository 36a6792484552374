// Wavelet analysis/synthesis cascade cost across depth and filter length.

#include <benchmark/benchmark.h>

#include <cstdint>
#include <random>
#include <string>

#include "leaderscope/wavelet.hpp"

namespace ls = leaderscope;

namespace {

ls::Signal noise_signal(int d, int J, std::uint64_t seed) {
    ls::Signal s;
    s.d = d;
    s.J = J;
    s.samples.resize(std::size_t(1) << (d * J));
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (auto& v : s.samples) v = u(rng);
    return s;
}

const char* filter_name(int index) {
    static const char* names[] = {"haar", "db2", "db4", "db8"};
    return names[index];
}

void bench_decompose_1d(benchmark::State& state) {
    const int J = int(state.range(0));
    const auto filter = ls::make_filter(filter_name(int(state.range(1))));
    const auto sig = noise_signal(1, J, 7);
    for (auto _ : state) benchmark::DoNotOptimize(ls::decompose(sig, filter));
    state.SetItemsProcessed(state.iterations() * (std::int64_t(1) << J));
}

void bench_decompose_2d(benchmark::State& state) {
    const int J = int(state.range(0));
    const auto filter = ls::make_filter(filter_name(int(state.range(1))));
    const auto sig = noise_signal(2, J, 7);
    for (auto _ : state) benchmark::DoNotOptimize(ls::decompose(sig, filter));
    state.SetItemsProcessed(state.iterations() * (std::int64_t(1) << (2 * J)));
}

void bench_roundtrip_1d(benchmark::State& state) {
    const int J = int(state.range(0));
    const auto filter = ls::make_filter("db4");
    const auto sig = noise_signal(1, J, 7);
    for (auto _ : state) benchmark::DoNotOptimize(ls::reconstruct(ls::decompose(sig, filter), filter));
    state.SetItemsProcessed(state.iterations() * (std::int64_t(1) << J));
}

}  // namespace

BENCHMARK(bench_decompose_1d)
    ->ArgsProduct({{12, 16, 20}, {0, 1, 2, 3}})
    ->ArgNames({"J", "filter"});
BENCHMARK(bench_decompose_2d)
    ->ArgsProduct({{8, 10}, {0, 2}})
    ->ArgNames({"J", "filter"});
BENCHMARK(bench_roundtrip_1d)->Arg(16)->Arg(20)->ArgName("J");
