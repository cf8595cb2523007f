#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "edlab/elliptic.hpp"
#include "edlab/grid.hpp"
#include "edlab/stencil.hpp"

using namespace edlab;

namespace {

GridField sample(const GridSpec& g) {
  return GridField::sample_real(g, [](double x, double y, double z) {
    return std::sin(x) * std::cos(y) + 0.3 * std::sin(2.0 * z);
  });
}

void BM_deriv(benchmark::State& state) {
  GridSpec g = GridSpec::cube(static_cast<int>(state.range(0)),
                              2.0 * std::numbers::pi);
  GridField f = sample(g);
  for (auto _ : state) benchmark::DoNotOptimize(deriv(f, 0));
  state.SetItemsProcessed(state.iterations() * g.size());
}
BENCHMARK(BM_deriv)->Arg(16)->Arg(32)->Arg(64);

void BM_laplacian(benchmark::State& state) {
  GridSpec g = GridSpec::cube(static_cast<int>(state.range(0)),
                              2.0 * std::numbers::pi);
  GridField f = sample(g);
  for (auto _ : state) benchmark::DoNotOptimize(laplacian(f));
  state.SetItemsProcessed(state.iterations() * g.size());
}
BENCHMARK(BM_laplacian)->Arg(16)->Arg(32)->Arg(64);

void BM_helmholtz(benchmark::State& state) {
  GridSpec g = GridSpec::cube(static_cast<int>(state.range(0)),
                              2.0 * std::numbers::pi);
  GridField rhs = sample(g);
  GridField coeff = GridField::constant(g, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(helmholtz_solve(rhs, coeff));
  state.SetItemsProcessed(state.iterations() * g.size());
}
BENCHMARK(BM_helmholtz)->Arg(16)->Arg(32);

}  // namespace

BENCHMARK_MAIN();
