#include <benchmark/benchmark.h>

#include "tomo/bst.hpp"
#include "tomo/dft.hpp"
#include "tomo/filtered.hpp"
#include "tomo/logpolar.hpp"
#include "tomo/phantoms.hpp"
#include "tomo/radon.hpp"
#include "tomo/reference.hpp"

using namespace tomo;

namespace {

// N x N image from an N-sample, N-angle Shepp-Logan sinogram.
Sinogram sinogram_for(int n) { return radon_ellipses(shepp_logan(), n, n); }

void BM_Naive(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Sinogram g = sinogram_for(n);
    for (auto _ : state) benchmark::DoNotOptimize(backproject_naive(g, n));
    state.SetComplexityN(n);
}

void BM_Bst(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Sinogram g = sinogram_for(n);
    BstOptions o;
    o.n_out = n;
    for (auto _ : state) benchmark::DoNotOptimize(bst_backproject(g, o));
    state.SetComplexityN(n);
}

void BM_LogPolar(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Sinogram g = sinogram_for(n);
    for (auto _ : state) benchmark::DoNotOptimize(logpolar_backproject(g, LogPolarOptions{}, n));
    state.SetComplexityN(n);
}

void BM_Fbp(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Sinogram g = sinogram_for(n);
    FilterSpec s;
    s.lambda = 0.02;
    for (auto _ : state) benchmark::DoNotOptimize(fbp(g, s, Engine::bst, n));
}

void BM_BstZeroPad(benchmark::State& state) {
    const Sinogram g = sinogram_for(256);
    BstOptions o;
    o.n_out = 256;
    o.zero_pad = static_cast<double>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(bst_backproject(g, o));
}

void BM_Dft2d(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    std::vector<cplx> data(static_cast<std::size_t>(n) * n, cplx(1.0, 0.5));
    for (auto _ : state) benchmark::DoNotOptimize(dft_2d(data, n, n, Direction::forward));
}

}  // namespace

BENCHMARK(BM_Naive)->RangeMultiplier(2)->Range(128, 512)->Unit(benchmark::kMillisecond)->Complexity(benchmark::oNCubed);
BENCHMARK(BM_Bst)->RangeMultiplier(2)->Range(128, 1024)->Unit(benchmark::kMillisecond)->Complexity(benchmark::oNSquared);
BENCHMARK(BM_LogPolar)->RangeMultiplier(2)->Range(128, 1024)->Unit(benchmark::kMillisecond)->Complexity(benchmark::oNSquared);
BENCHMARK(BM_Fbp)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BstZeroPad)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Dft2d)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
