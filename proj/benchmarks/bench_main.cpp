#include <benchmark/benchmark.h>

#include <cmath>
#include <memory>

#include "ewi/integrator.hpp"
#include "ewi/potential.hpp"

using namespace ewi;

namespace {

SpectralField gaussian(const GridPtr& g) {
  return to_fourier(SpectralField::sample(g, [](const Point3& x) {
    return Complex(std::exp(-0.5 * (x[0] * x[0] + x[1] * x[1] + x[2] * x[2])), 0.0);
  }));
}

GridPtr bench_grid(int dim, int n) { return make_cube_grid(dim, -8.0, 8.0, n); }

void BM_Transform(benchmark::State& state) {
  const auto g = bench_grid(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  ComplexVector data(g->size(), Complex(1.0, 0.5));
  for (auto _ : state) {
    g->forward(data);
    g->backward(data);
    benchmark::DoNotOptimize(data.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(g->size()));
}
BENCHMARK(BM_Transform)->Args({1, 16384})->Args({2, 256})->Args({3, 64});

void BM_ApplyPotential(benchmark::State& state) {
  const auto g = bench_grid(2, static_cast<int>(state.range(0)));
  RealizeOptions opts;
  opts.oversample = static_cast<int>(state.range(1));
  const PotentialField v = realize_inverse_power(InversePower{{{0, 0, 0}}, {-1.0}, 1.0}, g, opts);
  const SpectralField psi = gaussian(g);
  ComplexVector out(g->size());
  ComplexVector workspace;
  for (auto _ : state) {
    v.apply(psi.coeffs(), out, workspace);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_ApplyPotential)->Args({128, 2})->Args({128, 4})->Args({256, 4});

void BM_EwiStep(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  const auto g = bench_grid(dim, static_cast<int>(state.range(1)));
  EwiParams p;
  p.grid = g;
  p.tau = 1e-3;
  p.final_time = 1.0;
  p.beta = -1.0;
  p.potential = std::make_shared<const PotentialField>(
      realize_inverse_power(InversePower{{{0, 0, 0}}, {-1.0}, 0.5 * dim + 0.01}, g));
  EwiStepper stepper(p);
  SpectralField a = gaussian(g);
  SpectralField b = SpectralField::zeros(g);
  for (auto _ : state) {
    stepper.step(a.coeffs(), b.coeffs());
    std::swap(a, b);
  }
}
BENCHMARK(BM_EwiStep)->Args({1, 16384})->Args({2, 256})->Unit(benchmark::kMillisecond);

void BM_RealizeInversePower(benchmark::State& state) {
  const auto g = bench_grid(2, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(realize_inverse_power(InversePower{{{0, 0, 0}}, {-1.0}, 1.0}, g));
  }
}
BENCHMARK(BM_RealizeInversePower)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
