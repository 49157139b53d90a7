#include <benchmark/benchmark.h>

#include <complex>

#include "hexfourier/kernels.hpp"
#include "hexfourier/oracle.hpp"
#include "hexfourier/radial.hpp"
#include "hexfourier/specfun.hpp"

namespace {

using hexfourier::HexPoint;

void BM_Dirichlet(benchmark::State& state) {
  const HexPoint t(1.3, -0.4);
  for (auto _ : state) benchmark::DoNotOptimize(hexfourier::dirichlet(2.0, t).value);
}
BENCHMARK(BM_Dirichlet);

void BM_DirichletNearSingular(benchmark::State& state) {
  const HexPoint t(0.8, 0.80001);
  for (auto _ : state) benchmark::DoNotOptimize(hexfourier::dirichlet(2.0, t).value);
}
BENCHMARK(BM_DirichletNearSingular);

void BM_Cesaro(benchmark::State& state) {
  const double delta = static_cast<double>(state.range(0)) / 2.0;
  const HexPoint t(1.3, -0.4);
  for (auto _ : state) benchmark::DoNotOptimize(hexfourier::cesaro_kernel(3.0, delta, t).value);
}
BENCHMARK(BM_Cesaro)->Arg(3)->Arg(4)->Arg(5);

void BM_FDelta(benchmark::State& state) {
  const double u = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(hexfourier::f_delta(1.5, u));
}
BENCHMARK(BM_FDelta)->Arg(2)->Arg(20)->Arg(200);

void BM_QuadHexagon(benchmark::State& state) {
  const HexPoint t(1.3, -0.4);
  const double rho = static_cast<double>(state.range(0));
  hexfourier::HexQuadOptions opts;
  opts.initial_cells = hexfourier::oscillation_cells(rho, t) + 1;
  for (auto _ : state) {
    auto r = hexfourier::quad_hexagon(
        rho,
        [&](const HexPoint& s) {
          return std::exp(std::complex<double>(0.0, -2.0 / 3.0 * hexfourier::dot(s, t)));
        },
        opts);
    benchmark::DoNotOptimize(r.value);
  }
}
BENCHMARK(BM_QuadHexagon)->Arg(1)->Arg(4);

void BM_SpiderTruncated(benchmark::State& state) {
  const HexPoint t(0.6, 0.0);
  for (auto _ : state) benchmark::DoNotOptimize(hexfourier::j_truncated_integral(t));
}
BENCHMARK(BM_SpiderTruncated)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
