#include <benchmark/benchmark.h>

#include <random>

#include "subapprox/constructions.hpp"
#include "subapprox/enumeration.hpp"

using namespace subapprox;

namespace {

constexpr mpfr_prec_t P = 128;

RealSubspace r4() { return construct_r4(sqrt(Real(2L, P)), P).a; }

IntMatrix random_basis(std::mt19937_64& rng, std::size_t n, std::size_t e) {
    std::uniform_int_distribution<long> u(-9, 9);
    IntMatrix m(n, e);
    for (auto& x : m.a) x = u(rng);
    return m;
}

void BM_FromBasis(benchmark::State& state) {
    std::mt19937_64 rng(3);
    const auto n = static_cast<std::size_t>(state.range(0));
    const IntMatrix m = random_basis(rng, n, n / 2);
    for (auto _ : state) benchmark::DoNotOptimize(from_basis(m));
}
BENCHMARK(BM_FromBasis)->Arg(4)->Arg(6)->Arg(8);

void BM_Psi(benchmark::State& state) {
    const auto a = r4();
    std::mt19937_64 rng(4);
    const auto b = from_basis(random_basis(rng, 4, 2));
    for (auto _ : state) benchmark::DoNotOptimize(psi(a, b, 1));
}
BENCHMARK(BM_Psi);

void BM_Enumerate(benchmark::State& state) {
    EnumerationPlan p;
    p.n = 4;
    p.e = 2;
    p.height_max = static_cast<double>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(enumerate(p));
}
BENCHMARK(BM_Enumerate)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_Frontier(benchmark::State& state) {
    const auto a = r4();
    EnumerationPlan p;
    p.n = 4;
    p.e = 2;
    p.height_max = static_cast<double>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(frontier(a, 2, 1, p));
}
BENCHMARK(BM_Frontier)->Arg(30)->Arg(60)->Unit(benchmark::kMillisecond);

void BM_Heuristic(benchmark::State& state) {
    const auto a = r4();
    for (auto _ : state) benchmark::DoNotOptimize(heuristic_search(a, 2, 1, static_cast<int>(state.range(0)), 60.0));
}
BENCHMARK(BM_Heuristic)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_Spectrum(benchmark::State& state) {
    SpectrumConfig cfg;
    cfg.ell = 2;
    cfg.beta = Rat(5, 2);
    for (auto _ : state) benchmark::DoNotOptimize(spectrum_build(cfg, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_Spectrum)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
