#include <benchmark/benchmark.h>

#include <cmath>

#include "dhk/kink.hpp"
#include "dhk/pde_oracle.hpp"
#include "dhk/potential.hpp"
#include "dhk/seeds.hpp"
#include "dhk/transmutation.hpp"
#include "dhk/wronskian.hpp"
#include "dhk/zeta.hpp"

namespace {

dhk::DressingChain kink() { return dhk::DressingChain::kink(1.0); }

void BM_Wronskian(benchmark::State& state) {
  const auto chain = kink();
  double x = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(dhk::log_wronskian(chain, x, 0.1));
    x += 1e-6;
  }
}
BENCHMARK(BM_Wronskian);

void BM_DressedPotential(benchmark::State& state) {
  const dhk::PotentialField u(kink());
  double x = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(u(x));
    x += 1e-6;
  }
}
BENCHMARK(BM_DressedPotential);

void BM_DressDerivative(benchmark::State& state) {
  const auto chain = kink();
  const dhk::GaussianSolution probe(0.3, 1.0);
  double x = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(dhk::dress_function_derivative(chain, probe, x, 0.2, 2));
    x += 1e-6;
  }
}
BENCHMARK(BM_DressDerivative);

void BM_InitialCondition(benchmark::State& state) {
  const dhk::TriangularKernel rho0(kink());
  double x = 1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(rho0(x, -0.3));
    x += 1e-6;
  }
}
BENCHMARK(BM_InitialCondition);

void BM_FreePropagate(benchmark::State& state) {
  const dhk::TriangularKernel rho0(kink());
  double x = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(dhk::free_propagate(rho0, 0.3, x, -0.2));
    x += 1e-6;
  }
}
BENCHMARK(BM_FreePropagate);

void BM_DressedKernel(benchmark::State& state) {
  const dhk::HeatKernel kernel = dhk::HeatKernel::dressed(kink());
  double x = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernel.value(0.3, x, -0.2));
    x += 1e-6;
  }
}
BENCHMARK(BM_DressedKernel);

void BM_ClosedKernel(benchmark::State& state) {
  const dhk::ClosedFormKernel kernel(1.0, dhk::KernelVariant::ExpCorrected);
  double x = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernel.value(0.3, x, -0.2));
    x += 1e-6;
  }
}
BENCHMARK(BM_ClosedKernel);

void BM_ClosedTrace(benchmark::State& state) {
  double t = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        dhk::heat_trace_closed(t, 1.0, 4.0, dhk::KernelVariant::ExpCorrected));
    t += 1e-9;
  }
}
BENCHMARK(BM_ClosedTrace);

void BM_NumericTrace(benchmark::State& state) {
  const dhk::HeatKernel kernel =
      dhk::HeatKernel::closed_form_kink(1.0, dhk::KernelVariant::ExpCorrected);
  for (auto _ : state)
    benchmark::DoNotOptimize(dhk::trace_numeric(kernel, 1.0, 4.0));
}
BENCHMARK(BM_NumericTrace);

void BM_QuantumCorrection(benchmark::State& state) {
  const auto trace =
      dhk::HeatTrace::closed_form(1.0, 4.0, dhk::KernelVariant::ExpCorrected);
  for (auto _ : state)
    benchmark::DoNotOptimize(dhk::quantum_correction(trace, 1.0));
}
BENCHMARK(BM_QuantumCorrection);

void BM_CrankNicolson(benchmark::State& state) {
  const dhk::Grid1D grid{-16.0, 16.0, 0.02, 0.002};
  const dhk::PotentialField u(kink());
  const auto initial = dhk::gaussian_profile(grid, 0.0, 0.25);
  for (auto _ : state)
    benchmark::DoNotOptimize(dhk::evolve(u, initial, 0.25, grid));
}
BENCHMARK(BM_CrankNicolson);

void BM_BoundSpectrum(benchmark::State& state) {
  const dhk::Grid1D grid{-16.0, 16.0, 0.01, 0.001};
  const dhk::PotentialField u(kink());
  for (auto _ : state)
    benchmark::DoNotOptimize(dhk::bound_spectrum(u, grid, 2));
}
BENCHMARK(BM_BoundSpectrum);

}  // namespace

BENCHMARK_MAIN();
