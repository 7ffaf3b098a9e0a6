#include <benchmark/benchmark.h>

#include "rittlab/parse.hpp"
#include "rittlab/ratmap.hpp"

using namespace rittlab;

static void BM_compose_quadratics(benchmark::State& state) {
    RatMap a = parse_ratmap("(z^2-1)/(z^2+1)");
    RatMap b = parse_ratmap("((z-1)^2)/((z+1)^2)");
    for (auto _ : state) benchmark::DoNotOptimize(compose(a, b));
}
BENCHMARK(BM_compose_quadratics);

static void BM_iterate_quadratic(benchmark::State& state) {
    RatMap r = parse_ratmap("(z^2-1)/z");
    int n = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(iterate(r, n));
}
BENCHMARK(BM_iterate_quadratic)->Arg(4)->Arg(6)->Arg(8);

static void BM_parse_print_roundtrip(benchmark::State& state) {
    RatMap r = iterate(parse_ratmap("(z^2-1)/z"), 5);
    for (auto _ : state) benchmark::DoNotOptimize(parse_ratmap(print_ratmap(r)));
}
BENCHMARK(BM_parse_print_roundtrip);

BENCHMARK_MAIN();
