// Microbenchmarks for the bit-row kernels and the prioritization strategies
// on synthetic instances of increasing size.

#include <benchmark/benchmark.h>

#include "tcprio/bitrow.hpp"
#include "tcprio/rng.hpp"
#include "tcprio/strategies.hpp"
#include "tcprio/synth.hpp"

namespace {

using namespace tcprio;

CoverageMatrix instance(std::size_t tests, std::size_t units, double density) {
    SynthSpec spec;
    spec.tests = tests;
    spec.units = units;
    spec.density = density;
    spec.seed = 7;
    return generate_coverage(spec);
}

void BM_AndNotPopcount(benchmark::State& state) {
    const auto width = static_cast<std::size_t>(state.range(0));
    Rng rng(1);
    BitRow a(width), b(width);
    for (std::size_t i = 0; i < width; ++i) {
        if (rng.next_double() < 0.3) a.set(i);
        if (rng.next_double() < 0.3) b.set(i);
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(a.andnot_popcount(b));
    }
}
BENCHMARK(BM_AndNotPopcount)->Arg(1000)->Arg(10000)->Arg(100000);

void BM_TotalGreedy(benchmark::State& state) {
    const auto matrix = instance(static_cast<std::size_t>(state.range(0)),
                                 static_cast<std::size_t>(state.range(1)), 0.02);
    std::uint64_t seed = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(total_greedy(matrix, seed++));
    }
}
BENCHMARK(BM_TotalGreedy)->Args({200, 1000})->Args({1000, 5000});

void BM_AdditionalGreedy(benchmark::State& state) {
    const auto matrix = instance(static_cast<std::size_t>(state.range(0)),
                                 static_cast<std::size_t>(state.range(1)), 0.02);
    std::uint64_t seed = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(additional_greedy(matrix, seed++));
    }
}
BENCHMARK(BM_AdditionalGreedy)->Args({200, 1000})->Args({1000, 5000});

void BM_Ocp(benchmark::State& state) {
    const auto matrix = instance(static_cast<std::size_t>(state.range(0)),
                                 static_cast<std::size_t>(state.range(1)), 0.02);
    std::uint64_t seed = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(ocp(matrix, seed++));
    }
}
BENCHMARK(BM_Ocp)->Args({200, 1000})->Args({1000, 5000});

void BM_LexicographicalGreedy(benchmark::State& state) {
    const auto matrix = instance(static_cast<std::size_t>(state.range(0)),
                                 static_cast<std::size_t>(state.range(1)), 0.02);
    std::uint64_t seed = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(lexicographical_greedy(matrix, seed++));
    }
}
BENCHMARK(BM_LexicographicalGreedy)->Args({200, 1000});

void BM_UnifiedGreedy(benchmark::State& state) {
    const auto matrix = instance(static_cast<std::size_t>(state.range(0)),
                                 static_cast<std::size_t>(state.range(1)), 0.02);
    std::uint64_t seed = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(unified_greedy(matrix, seed++, 0.5));
    }
}
BENCHMARK(BM_UnifiedGreedy)->Args({200, 1000});

void BM_ArtBased(benchmark::State& state) {
    const auto matrix = instance(static_cast<std::size_t>(state.range(0)),
                                 static_cast<std::size_t>(state.range(1)), 0.02);
    std::uint64_t seed = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(art_based(matrix, seed++, 10));
    }
}
BENCHMARK(BM_ArtBased)->Args({200, 1000});

}  // namespace

BENCHMARK_MAIN();
