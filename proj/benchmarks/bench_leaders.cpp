// Leader-pyramid construction cost across depth, dimension and p.

#include <benchmark/benchmark.h>

#include <cstdint>
#include <random>

#include "leaderscope/common.hpp"
#include "leaderscope/leaders.hpp"
#include "leaderscope/wavelet.hpp"

namespace ls = leaderscope;

namespace {

ls::CoefficientPyramid dense_pyramid(int d, int J, std::uint64_t seed) {
    auto pyr = ls::CoefficientPyramid::zeros(d, J);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> mag(0.5, 1.0);
    pyr.coarse[0] = mag(rng);
    for (auto& scale : pyr.detail)
        for (auto& plane : scale)
            for (auto& c : plane) c = mag(rng) * ((rng() & 1) ? 1.0 : -1.0);
    return pyr;
}

void bench_leader_pyramid_1d(benchmark::State& state) {
    const int J = int(state.range(0));
    const double p = state.range(1) == 0 ? ls::kInf : double(state.range(1));
    const auto pyr = dense_pyramid(1, J, 42);
    for (auto _ : state) benchmark::DoNotOptimize(ls::leader_pyramid(pyr, p, 2));
    state.SetItemsProcessed(state.iterations() * (std::int64_t(1) << J));
}

void bench_leader_pyramid_2d(benchmark::State& state) {
    const int J = int(state.range(0));
    const double p = state.range(1) == 0 ? ls::kInf : double(state.range(1));
    const auto pyr = dense_pyramid(2, J, 42);
    for (auto _ : state) benchmark::DoNotOptimize(ls::leader_pyramid(pyr, p, 2));
    state.SetItemsProcessed(state.iterations() * (std::int64_t(1) << (2 * J)));
}

void bench_local_leader(benchmark::State& state) {
    const int J = int(state.range(0));
    const auto lp = ls::leader_pyramid(dense_pyramid(1, J, 42), ls::kInf, 2);
    const ls::Point x0{0.37, 0.0};
    for (auto _ : state)
        for (int j = 2; j <= lp.max_scale(); ++j)
            benchmark::DoNotOptimize(ls::local_leader(lp, x0, j));
}

}  // namespace

BENCHMARK(bench_leader_pyramid_1d)
    ->ArgsProduct({{10, 14, 18}, {0 /*inf*/, 1, 2}})
    ->ArgNames({"J", "p"});
BENCHMARK(bench_leader_pyramid_2d)
    ->ArgsProduct({{6, 8, 10}, {0 /*inf*/, 2}})
    ->ArgNames({"J", "p"});
BENCHMARK(bench_local_leader)->Arg(14)->Arg(18)->ArgName("J");

BENCHMARK_MAIN();
