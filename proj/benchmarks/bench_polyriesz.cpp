#include <benchmark/benchmark.h>

#include <cmath>

#include "polyriesz/energy.hpp"
#include "polyriesz/geometry.hpp"
#include "polyriesz/kernel.hpp"
#include "polyriesz/potential.hpp"
#include "polyriesz/stationarity.hpp"

namespace {

using namespace polyriesz;

QuadratureSpec spec_with_tol(double tol) {
  QuadratureSpec q;
  q.tolerance = tol;
  return q;
}

void BM_PotentialInterior(benchmark::State& state) {
  Polygon p = Polygon::regular_ngon(5, 1.0);
  Kernel k = Kernel::riesz(1.0);
  QuadratureSpec q;
  for (auto _ : state) {
    benchmark::DoNotOptimize(potential_at(p, k, {0.05, 0.02}, q));
  }
}
BENCHMARK(BM_PotentialInterior);

void BM_PotentialNearBoundary(benchmark::State& state) {
  Polygon p = Polygon::regular_ngon(5, 1.0);
  Kernel k = Kernel::riesz(1.0);
  QuadratureSpec q;
  Vec2 x = p.vertex(0) * 0.999;
  for (auto _ : state) {
    benchmark::DoNotOptimize(potential_at(p, k, x, q));
  }
}
BENCHMARK(BM_PotentialNearBoundary);

void BM_SideIntegrals(benchmark::State& state) {
  Polygon p = Polygon::regular_ngon(5, 1.0);
  Kernel k = Kernel::riesz(1.0);
  QuadratureSpec q = spec_with_tol(1e-6);
  for (auto _ : state) {
    benchmark::DoNotOptimize(side_integrals(p, k, 0, q));
  }
}
BENCHMARK(BM_SideIntegrals);

void BM_EnergySquare(benchmark::State& state) {
  Polygon p({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  Kernel k = Kernel::riesz(1.0);
  QuadratureSpec q = spec_with_tol(std::pow(10.0, -static_cast<double>(state.range(0))));
  for (auto _ : state) {
    benchmark::DoNotOptimize(energy(p, k, q));
  }
}
BENCHMARK(BM_EnergySquare)->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_EnergyRegularized(benchmark::State& state) {
  Polygon p = Polygon::regular_ngon(5, 1.0);
  Kernel k = Kernel::regularized_riesz(1.0, 0.05);
  QuadratureSpec q = spec_with_tol(1e-6);
  for (auto _ : state) {
    benchmark::DoNotOptimize(energy(p, k, q));
  }
}
BENCHMARK(BM_EnergyRegularized)->Unit(benchmark::kMillisecond);

void BM_CheckStationarity(benchmark::State& state) {
  Polygon p = Polygon::regular_ngon(4, 1.0);
  Kernel k = Kernel::riesz(1.0);
  QuadratureSpec q = spec_with_tol(1e-5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(check_stationarity(p, k, Constraint::Area, 1e-4, q));
  }
}
BENCHMARK(BM_CheckStationarity)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
