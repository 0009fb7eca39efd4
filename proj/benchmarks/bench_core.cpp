#include <benchmark/benchmark.h>

#include <random>

#include "chaoslab/fourier.hpp"
#include "chaoslab/grid.hpp"
#include "chaoslab/maps.hpp"
#include "chaoslab/nls.hpp"
#include "chaoslab/random_fields.hpp"
#include "chaoslab/shadowing.hpp"
#include "chaoslab/spectra.hpp"

using namespace chaoslab;

static void BM_GalerkinRhs(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const CoefficientField w = random_coefficients(static_cast<int>(state.range(0)), rng, 8.0);
  for (auto _ : state) benchmark::DoNotOptimize(galerkin_rhs(w));
}
BENCHMARK(BM_GalerkinRhs)->Arg(4)->Arg(8)->Arg(12);

static void BM_TruncatedSpectrum(benchmark::State& state) {
  const auto op = build_class_operator({{-3, -2}, {1, 1}}, {2.0, 0.0}, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(truncated_spectrum(op));
}
BENCHMARK(BM_TruncatedSpectrum)->Arg(25)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

static void BM_ContinuedFraction(benchmark::State& state) {
  const auto op = build_class_operator({{-3, -2}, {1, 1}}, {2.0, 0.0}, 50);
  const complex seed{0.248, 0.352};
  for (auto _ : state) benchmark::DoNotOptimize(continued_fraction_eigen(op, seed));
}
BENCHMARK(BM_ContinuedFraction)->Unit(benchmark::kMicrosecond);

static void BM_GridBracket(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(2);
  const GridField2D a = random_band_limited(n, 5, rng), b = random_band_limited(n, 5, rng);
  for (auto _ : state) benchmark::DoNotOptimize(grid_bracket(a, b));
}
BENCHMARK(BM_GridBracket)->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMicrosecond);

static void BM_PdnlsRhs(benchmark::State& state) {
  const nls::Params p{static_cast<int>(state.range(0)), 5.0, 1.0, 20.0, 1e-3};
  const auto s = nls::LatticeState::uniform(p.N, {1.0, 0.5});
  for (auto _ : state) benchmark::DoNotOptimize(nls::pdnls_rhs(s, p));
}
BENCHMARK(BM_PdnlsRhs)->Arg(8)->Arg(64);

static void BM_FindShadow(benchmark::State& state) {
  const auto f = maps::hyperbolic_test_map();
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1e-3, 1e-3);
  std::vector<shadow::Vec> y(static_cast<std::size_t>(state.range(0)), shadow::Vec(2));
  for (auto& v : y) v << u(rng), u(rng);
  const auto pseudo = shadow::PseudoOrbit::measured(y, f);
  for (auto _ : state) benchmark::DoNotOptimize(shadow::find_shadow(pseudo, f));
}
BENCHMARK(BM_FindShadow)->Arg(100)->Arg(1000)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
