#include <benchmark/benchmark.h>

#include <random>

#include "rainbow/constructions.hpp"
#include "rainbow/finder.hpp"
#include "rainbow/multilinear.hpp"
#include "rainbow/search.hpp"
#include "repro.hpp"

using namespace rainbow;

static void BM_FixedRNoRainbow(benchmark::State& state) {
    const auto t = static_cast<std::size_t>(state.range(0));
    const auto inst = fixed_r_construction(3, t);
    for (auto _ : state) benchmark::DoNotOptimize(find_rainbow(inst, t).nodes_visited);
    state.counters["N"] = static_cast<double>(inst.num_colors());
}
BENCHMARK(BM_FixedRNoRainbow)->Arg(6)->Arg(9)->Arg(12)->Unit(benchmark::kMillisecond);

static void BM_SimpleFNoRainbow(benchmark::State& state) {
    const auto inst = simple_F_construction(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)));
    for (auto _ : state) benchmark::DoNotOptimize(find_rainbow(inst, inst.t).nodes_visited);
    state.counters["N"] = static_cast<double>(inst.num_colors());
}
BENCHMARK(BM_SimpleFNoRainbow)->Args({2, 5})->Args({4, 3})->Args({6, 2})->Unit(benchmark::kMillisecond);

static void BM_ParallelSearch(benchmark::State& state) {
    const auto inst = simple_F_construction(4, 3);
    SearchBudget b;
    b.threads = static_cast<unsigned>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(find_rainbow(inst, inst.t, b).nodes_visited);
}
BENCHMARK(BM_ParallelSearch)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_ConstructiveFinder(benchmark::State& state) {
    std::mt19937_64 rng(1);
    const auto inst = repro::random_distinct_matchings(2, 2, 12, static_cast<std::size_t>(state.range(0)), rng);
    for (auto _ : state) benchmark::DoNotOptimize(find_rainbow_constructive(inst).outcome.status);
}
BENCHMARK(BM_ConstructiveFinder)->Arg(36)->Arg(100)->Arg(300);

static void BM_SpreadDecompose(benchmark::State& state) {
    std::mt19937_64 rng(2);
    const auto inst = repro::random_distinct_matchings(3, 2, 18, static_cast<std::size_t>(state.range(0)), rng);
    for (auto _ : state) benchmark::DoNotOptimize(spread_decompose(inst).steps.size());
}
BENCHMARK(BM_SpreadDecompose)->Arg(200)->Arg(1000);

static void BM_MultilinearRandom(benchmark::State& state) {
    const auto dim = static_cast<std::size_t>(state.range(0));
    const auto prob = random_family(3, dim, 2 * dim + 1, 7);
    for (auto _ : state) benchmark::DoNotOptimize(multilinear_rainbow_find(prob.family, prob.phi).evaluations);
}
BENCHMARK(BM_MultilinearRandom)->Arg(2)->Arg(4)->Arg(8);

static void BM_AlgebraicPartite(benchmark::State& state) {
    std::mt19937_64 rng(3);
    const auto inst = repro::random_partite_matchings(2, 2, 3, 9, rng);
    for (auto _ : state) benchmark::DoNotOptimize(rainbow_via_multilinear(inst).outcome.status);
}
BENCHMARK(BM_AlgebraicPartite);

BENCHMARK_MAIN();
