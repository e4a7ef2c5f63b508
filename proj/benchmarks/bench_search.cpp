#include "spinsys/congruence.hpp"
#include "spinsys/systole.hpp"

#include <benchmark/benchmark.h>

using namespace spinsys;

static void BM_EnumerateFiniteSpin(benchmark::State& state) {
    const QuadraticForm f = QuadraticForm::standard(3);
    const IdealHandle ideal(AlgebraicInteger(state.range(0)));
    EnumerationOptions options;
    options.threads = static_cast<unsigned>(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(enumerate_finite_spin(f, ideal, options).order);
}
BENCHMARK(BM_EnumerateFiniteSpin)
    ->Args({3, 1})
    ->Args({7, 1})
    ->Args({15, 1})
    ->Args({15, 4})
    ->Unit(benchmark::kMillisecond)
    ->UseRealTime();

static void BM_SoBruteForce(benchmark::State& state) {
    const QuadraticForm f = QuadraticForm::standard(static_cast<int>(state.range(1)));
    const IdealHandle ideal(AlgebraicInteger(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(so_order_bruteforce(f, ideal));
}
BENCHMARK(BM_SoBruteForce)->Args({5, 3})->Args({3, 4})->Args({5, 4})->Unit(benchmark::kMillisecond);

static void BM_KernelTheta(benchmark::State& state) {
    const QuadraticForm f = QuadraticForm::standard(3);
    const IdealHandle prime(AlgebraicInteger(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(kernel_theta_size(f, prime, 1).kernel_size);
}
BENCHMARK(BM_KernelTheta)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

static void BM_BoxSearch(benchmark::State& state) {
    const CongruenceLevel level(QuadraticForm::standard(3), IdealHandle(AlgebraicInteger(3)));
    SearchBox box;
    box.bound = state.range(0);
    box.threads = static_cast<unsigned>(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(search_short_elements(level, box).survivors);
}
BENCHMARK(BM_BoxSearch)->Args({10, 1})->Args({40, 1})->Args({40, 4})->Unit(benchmark::kMillisecond)->UseRealTime();

static void BM_BoxSearchQuadratic(benchmark::State& state) {
    const FieldSpec field = FieldSpec::quadratic(2);
    const CongruenceLevel level(QuadraticForm::parse("1,-sqrt2,-sqrt2", field), IdealHandle::parse("(3)", field));
    SearchBox box;
    box.bound = state.range(0);
    for (auto _ : state) benchmark::DoNotOptimize(search_short_elements(level, box).survivors);
}
BENCHMARK(BM_BoxSearchQuadratic)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);
