#include <benchmark/benchmark.h>

#include "flightlab/densities.hpp"
#include "flightlab/polarity.hpp"
#include "flightlab/rates.hpp"
#include "flightlab/samplers.hpp"
#include "flightlab/specfun.hpp"
#include "flightlab/transmute.hpp"

using namespace flightlab;

static void BM_BesselI0(benchmark::State& state) {
  double x = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(specfun::bessel_i(0, x));
    x = x > 30.0 ? 0.1 : x + 0.37;
  }
}
BENCHMARK(BM_BesselI0);

static void BM_RegIncBeta(benchmark::State& state) {
  double z = 0.01;
  for (auto _ : state) {
    benchmark::DoNotOptimize(specfun::reg_inc_beta(2.5, 0.5, z));
    z = z > 0.98 ? 0.01 : z + 0.013;
  }
}
BENCHMARK(BM_RegIncBeta);

static void BM_DensityCoth(benchmark::State& state) {
  const auto law = Law1D::coth(1.0, 1.0, 3.0);
  double x = -2.9;
  for (auto _ : state) {
    benchmark::DoNotOptimize(density_1d(law, x));
    x = x > 2.9 ? -2.9 : x + 0.01;
  }
}
BENCHMARK(BM_DensityCoth);

static void BM_PlanarUnconditional(benchmark::State& state) {
  const auto model = RateModel::square_hazard(1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(density_planar_unconditional(PlanarKind::ProjY, 3, model, 0.4, 1.0, 1.0));
  }
}
BENCHMARK(BM_PlanarUnconditional);

static void BM_SampleExactEPD(benchmark::State& state) {
  const auto law = Law1D::epd(0.5, 1.0, 1.0);
  const auto n = static_cast<std::size_t>(state.range(0));
  std::uint64_t seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(sample_exact_1d(law, n, seed++));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SampleExactEPD)->Arg(100000);

static void BM_TelegraphPath(benchmark::State& state) {
  const auto model = state.range(1) == 0 ? RateModel::tanh(1.0) : RateModel::epd(0.5);
  const auto n = static_cast<std::size_t>(state.range(0));
  std::uint64_t seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(sample_telegraph_path(model, 1.0, 3.0, 1e-4, n, seed++));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_TelegraphPath)->Args({100000, 0})->Args({100000, 1});

static void BM_FourDirections(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::uint64_t seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_four_directions(RateModel::constant(1.0), 1.0, 3.0, 1e-4, n, seed++));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_FourDirections)->Arg(100000);

static void BM_EkTransmute(benchmark::State& state) {
  const auto w = transmute::dalembert(transmute::make_datum("gaussian"), transmute::Datum::zero(), 1.0);
  const auto v = transmute::ek_transmute(w, 1.5);
  double x = -1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(v(x, 0.7));
    x = x > 1.0 ? -1.0 : x + 0.01;
  }
}
BENCHMARK(BM_EkTransmute);

static void BM_PolaritySolver(benchmark::State& state) {
  PolarityOptions opt;
  opt.cells = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(solve_polarity_system(RateModel::constant(1.0), 1.0, 3.0, opt));
}
BENCHMARK(BM_PolaritySolver)->Arg(101)->Arg(201)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
