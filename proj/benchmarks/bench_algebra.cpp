#include "spinsys/form.hpp"
#include "spinsys/spin.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace spinsys;

namespace {

CliffordElement<Rational> dense_rational(int dim, std::uint64_t seed) {
    const auto a = standard_rational_algebra(dim);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> num(-9, 9);
    std::uniform_int_distribution<int> den(1, 5);
    CliffordElement<Rational> x(a);
    for (BladeMask m = 0; m < a.blade_count(); ++m) x.set(m, Rational(num(rng), den(rng)));
    return x;
}

CliffordElement<double> dense_real(int dim, std::uint64_t seed) {
    const auto a = standard_real_algebra(dim);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coord(-1.0, 1.0);
    CliffordElement<double> x(a);
    for (BladeMask m = 0; m < a.blade_count(); ++m) x.set(m, coord(rng));
    return x;
}

}  // namespace

static void BM_RationalProduct(benchmark::State& state) {
    const int dim = static_cast<int>(state.range(0));
    const auto x = dense_rational(dim, 1);
    const auto y = dense_rational(dim, 2);
    for (auto _ : state) benchmark::DoNotOptimize(x * y);
}
BENCHMARK(BM_RationalProduct)->DenseRange(2, 6);

static void BM_RealProduct(benchmark::State& state) {
    const int dim = static_cast<int>(state.range(0));
    const auto x = dense_real(dim, 1);
    const auto y = dense_real(dim, 2);
    for (auto _ : state) benchmark::DoNotOptimize(x * y);
}
BENCHMARK(BM_RealProduct)->DenseRange(2, 8);

static void BM_IsSpin(benchmark::State& state) {
    const auto a = standard_rational_algebra(static_cast<int>(state.range(0)));
    const auto s = rational_boost(a, 2, Rational(3, 2)) * rational_rotation(a, 2, 3, Rational(1, 2));
    for (auto _ : state) benchmark::DoNotOptimize(is_spin(s));
}
BENCHMARK(BM_IsSpin)->DenseRange(3, 6);

static void BM_DisplacementAtBasepoint(benchmark::State& state) {
    const auto a = standard_real_algebra(static_cast<int>(state.range(0)));
    const SpinElement<double> s(elementary_boost(a, 2, 0.8) * elementary_rotation(a, 2, 3, 0.3));
    for (auto _ : state) benchmark::DoNotOptimize(displacement_at_basepoint(s));
}
BENCHMARK(BM_DisplacementAtBasepoint)->DenseRange(3, 6);
