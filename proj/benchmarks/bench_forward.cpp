#include <benchmark/benchmark.h>

#include "ntdlab/detection.hpp"
#include "ntdlab/forward.hpp"

using namespace ntdlab;

static void BM_NtdMatrix(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Mesh mesh = build_unit_square_mesh(n);
    const GammaPatch patch =
        build_gamma_patch(mesh, BoundarySelector::sides(BoundarySelector::Bottom));
    const Potential q = Potential::constant(mesh, 1.0);
    for (auto _ : state) {
        NtdMatrix ntd = ntd_matrix(mesh, patch, q);
        benchmark::DoNotOptimize(ntd.values.data());
    }
}
BENCHMARK(BM_NtdMatrix)->Arg(16)->Arg(32)->Arg(64);

static void BM_NtdMatrixThreaded(benchmark::State& state) {
    const Mesh mesh = build_unit_square_mesh(64);
    const GammaPatch patch = build_gamma_patch(mesh, BoundarySelector::all());
    const Potential q = Potential::constant(mesh, 1.0);
    for (auto _ : state) {
        NtdMatrix ntd = ntd_matrix(mesh, patch, q, static_cast<int>(state.range(0)));
        benchmark::DoNotOptimize(ntd.values.data());
    }
}
BENCHMARK(BM_NtdMatrixThreaded)->Arg(1)->Arg(2)->Arg(4);

static void BM_DifferenceSpectrum(benchmark::State& state) {
    const Mesh mesh = build_unit_square_mesh(32);
    const GammaPatch patch = build_gamma_patch(mesh, BoundarySelector::all());
    const NtdMatrix l1 = ntd_matrix(mesh, patch, Potential::constant(mesh, 2.0));
    const NtdMatrix l2 = ntd_matrix(mesh, patch, Potential::constant(mesh, 1.0));
    for (auto _ : state) {
        SpectrumReport report = difference_spectrum(l1, l2, patch);
        benchmark::DoNotOptimize(report.max_eigenvalue);
    }
}
BENCHMARK(BM_DifferenceSpectrum);

BENCHMARK_MAIN();
