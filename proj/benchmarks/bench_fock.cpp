#include <benchmark/benchmark.h>

#include "edlab/carleman.hpp"

using namespace edlab::fock;

namespace {

void BM_hamiltonian(benchmark::State& state) {
  FockBasis basis(1, static_cast<int>(state.range(0)));
  PolyVectorField F = PolyVectorField::nonlinear_mode(0.1);
  for (auto _ : state) benchmark::DoNotOptimize(hamiltonian(F, basis));
}
BENCHMARK(BM_hamiltonian)->Arg(8)->Arg(16)->Arg(32);

void BM_fock_evolve(benchmark::State& state) {
  FockBasis basis(1, static_cast<int>(state.range(0)));
  PolyVectorField F = PolyVectorField::nonlinear_mode(0.1);
  Mat M = hamiltonian(F, basis);
  Vec xi(1);
  xi[0] = 0.3;
  Vec v0 = coherent(xi, basis);
  for (auto _ : state)
    benchmark::DoNotOptimize(fock_evolve(v0, M, 0.1, 1e-3));
}
BENCHMARK(BM_fock_evolve)->Arg(8)->Arg(16)->Arg(32);

void BM_coupled_chain(benchmark::State& state) {
  FockBasis basis(3, static_cast<int>(state.range(0)));
  PolyVectorField F = PolyVectorField::coupled_chain(0.2, 0.1);
  Mat M = hamiltonian(F, basis);
  Vec xi = Vec::Zero(3);
  xi[0] = 0.25;
  Vec v0 = coherent(xi, basis);
  for (auto _ : state)
    benchmark::DoNotOptimize(fock_evolve(v0, M, 0.1, 1e-3));
}
BENCHMARK(BM_coupled_chain)->Arg(4)->Arg(6);

}  // namespace

BENCHMARK_MAIN();
