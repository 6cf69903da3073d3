#include <benchmark/benchmark.h>

#include "ntdlab/assembly.hpp"

using namespace ntdlab;

static void BM_BuildMesh(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        Mesh mesh = build_unit_square_mesh(n);
        benchmark::DoNotOptimize(mesh.nodes.data());
    }
}
BENCHMARK(BM_BuildMesh)->Arg(16)->Arg(64)->Arg(128);

static void BM_AssembleStiffness(benchmark::State& state) {
    const Mesh mesh = build_unit_square_mesh(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        SparseMatrix k = assemble_stiffness(mesh);
        benchmark::DoNotOptimize(k.valuePtr());
    }
}
BENCHMARK(BM_AssembleStiffness)->Arg(16)->Arg(64)->Arg(128);

static void BM_AssembleWeightedMass(benchmark::State& state) {
    const Mesh mesh = build_unit_square_mesh(static_cast<int>(state.range(0)));
    const Potential q = Potential::constant(mesh, 1.0);
    for (auto _ : state) {
        SparseMatrix m = assemble_weighted_mass(mesh, q);
        benchmark::DoNotOptimize(m.valuePtr());
    }
}
BENCHMARK(BM_AssembleWeightedMass)->Arg(16)->Arg(64)->Arg(128);
