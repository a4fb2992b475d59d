#include <benchmark/benchmark.h>

#include <cmath>

#include <epm/dyadic.hpp>
#include <epm/evolution.hpp>
#include <epm/fluid.hpp>
#include <epm/grid.hpp>
#include <epm/poisson.hpp>
#include <epm/wsobolev.hpp>

using namespace epm;

namespace {

GridFunction radial_gaussian(int n) {
  RadialGrid g(64.0, n);
  return sample_analytic([](double r) { return std::exp(-r * r / 2.0); }, g);
}

void bm_weighted_norm(benchmark::State& state) {
  auto u = radial_gaussian(int(state.range(0)));
  WeightedNormSpec spec;
  DyadicPartition part(spec.j_max);
  for (auto _ : state)
    benchmark::DoNotOptimize(weighted_norm(u, spec, part).norm());
}

void bm_poisson_radial(benchmark::State& state) {
  RadialGrid g(64.0, int(state.range(0)));
  auto st = static_profile(g);
  for (auto _ : state)
    benchmark::DoNotOptimize(solve_poisson_radial(st.rho).residual);
}

void bm_poisson_box(benchmark::State& state) {
  BoxGrid g(16.0, int(state.range(0)));
  auto rho = sample_analytic(
      [](double x, double y, double z) {
        return std::exp(-(x * x + y * y + z * z));
      },
      g);
  for (auto _ : state)
    benchmark::DoNotOptimize(solve_poisson_box(rho).residual);
}

void bm_rk4_step(benchmark::State& state) {
  RadialGrid g(64.0, int(state.range(0)));
  auto st = static_profile(g);
  FluidState u = zero_state(Geometry{g});
  u.w = st.w;
  SchemeConfig scheme;
  for (auto _ : state)
    benchmark::DoNotOptimize(step(u, st.eos, scheme).dt);
}

void bm_hs_norm_box(benchmark::State& state) {
  BoxGrid g(8.0, int(state.range(0)));
  auto u = sample_analytic(
      [](double x, double y, double z) {
        return std::exp(-(x * x + y * y + z * z));
      },
      g);
  for (auto _ : state) benchmark::DoNotOptimize(hs_norm(u, 2.6).value);
}

}  // namespace

BENCHMARK(bm_weighted_norm)->Arg(1024)->Arg(4096)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_poisson_radial)->Arg(1024)->Arg(4096)->Unit(benchmark::kMicrosecond);
BENCHMARK(bm_poisson_box)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_rk4_step)->Arg(1024)->Arg(2048)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_hs_norm_box)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
