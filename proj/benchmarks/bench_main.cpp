#include <benchmark/benchmark.h>

#include <random>

#include "maxface/balance.hpp"
#include "maxface/presets.hpp"
#include "maxface/singularity.hpp"

using namespace maxface;

static SimplePoleFunction random_function(int poles) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<Pole> out;
    for (int j = 0; j < poles; ++j) out.push_back({Complex{static_cast<double>(j), u(rng)}, Complex{u(rng), u(rng)}});
    return SimplePoleFunction(out);
}

static void BM_ResidueOfPower(benchmark::State& state) {
    const auto f = random_function(6);
    const int m = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(residue_of_power(f, 2, m));
}
BENCHMARK(BM_ResidueOfPower)->Arg(3)->Arg(6)->Arg(10);

static void BM_ResidueOfPowerMpfr(benchmark::State& state) {
    const auto f = random_function(6);
    for (auto _ : state) benchmark::DoNotOptimize(residue_of_power(f, 2, 10, {static_cast<int>(state.range(0))}));
}
BENCHMARK(BM_ResidueOfPowerMpfr)->Arg(128)->Arg(256);

static void BM_ClassifyPeriod(benchmark::State& state) {
    const PeriodicConfiguration pc(preset("height2", {static_cast<int>(state.range(0))}));
    for (auto _ : state) benchmark::DoNotOptimize(classify_period(pc, 8));
}
BENCHMARK(BM_ClassifyPeriod)->Arg(2)->Arg(6);

static void BM_NewtonBalance(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const FiniteBlock exact = preset("height2", {n});
    std::vector<Complex> pts(exact.layer(1).points().begin(), exact.layer(1).points().end());
    pts.front() += Complex{0.03, -0.02};
    const PeriodicConfiguration start(FiniteBlock({exact.layer(0), Layer(pts)}, exact.translation()));
    for (auto _ : state) benchmark::DoNotOptimize(newton_balance(start, {}));
}
BENCHMARK(BM_NewtonBalance)->Arg(2)->Arg(6);

static void BM_WindowSpectrum(benchmark::State& state) {
    const PeriodicConfiguration pc(preset("height2", {3}));
    for (auto _ : state)
        benchmark::DoNotOptimize(nondegeneracy_spectrum(pc, static_cast<int>(state.range(0)), Boundary::Wrap));
}
BENCHMARK(BM_WindowSpectrum)->Arg(1)->Arg(4)->Arg(16);

BENCHMARK_MAIN();
