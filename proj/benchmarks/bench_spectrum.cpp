// Exponent bisection and histogram-spectrum cost on synthetic pyramids.

#include <benchmark/benchmark.h>

#include <vector>

#include "leaderscope/admissible.hpp"
#include "leaderscope/common.hpp"
#include "leaderscope/leaders.hpp"
#include "leaderscope/spectrum.hpp"
#include "leaderscope/synth.hpp"

namespace ls = leaderscope;

namespace {

const ls::AdmissibleSequence& sigma8() {
    static const auto s = ls::AdmissibleSequence::power_log(0.8, 0.0);
    return s;
}

ls::LeaderPyramid saturating_leaders(int J) {
    return ls::leader_pyramid(ls::gen_saturating({sigma8(), 2.0, 2.0, 1, 1, J, 1}), ls::kInf, 0);
}

void bench_pointwise_exponent(benchmark::State& state) {
    const auto lp = saturating_leaders(int(state.range(0)));
    const auto family = ls::AdmissibleFamily::canonical(ls::kInf, ls::kInf);
    const ls::Point x0{0.37, 0.0};
    for (auto _ : state) benchmark::DoNotOptimize(ls::pointwise_exponent(lp, x0, family));
}

void bench_empirical_spectrum(benchmark::State& state) {
    const auto lp = saturating_leaders(int(state.range(0)));
    const ls::RatioFunction rf(sigma8(), ls::AdmissibleFamily::canonical(ls::kInf, ls::kInf), 1,
                               2.0);
    const auto pred = ls::predicted_spectrum(rf, 33);
    std::vector<double> grid;
    for (const auto& pt : pred.points) grid.push_back(pt.h);
    const ls::AdmissibleFamily binning(ls::AdmissibleSequence::power_log(0.0, 2.0), ls::kInf,
                                       ls::kInf);
    ls::EmpiricalOptions options;
    options.delta = 0.035;
    for (auto _ : state) benchmark::DoNotOptimize(ls::empirical_spectrum(lp, grid, binning, options));
}

void bench_structure_function(benchmark::State& state) {
    const auto lp = saturating_leaders(int(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(ls::structure_function(lp, 2.0));
}

}  // namespace

BENCHMARK(bench_pointwise_exponent)->Arg(10)->Arg(14)->ArgName("J");
BENCHMARK(bench_empirical_spectrum)->Arg(10)->Arg(14)->ArgName("J");
BENCHMARK(bench_structure_function)->Arg(10)->Arg(14)->ArgName("J");
