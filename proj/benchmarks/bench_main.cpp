#include <benchmark/benchmark.h>

#include "sysid/bounds.hpp"
#include "sysid/covariance.hpp"
#include "sysid/estimators.hpp"
#include "sysid/index_family.hpp"
#include "sysid/linear_system.hpp"
#include "sysid/moments.hpp"
#include "sysid/noise.hpp"
#include "sysid/selection.hpp"
#include "sysid/simulate.hpp"
#include "sysid/stacked_map.hpp"

namespace {

sysid::LinearSystem bench_system() {
  sysid::LinearSystem sys;
  sys.A.resize(4, 4);
  sys.A << 0.5, 0.0, 0.0, 0.5,
           0.0, 0.5, 0.0, 0.5,
           0.5, 0.0, 0.5, 0.0,
           0.5, 0.0, 0.5, 0.5;
  sys.a = sysid::Vector::Constant(4, 0.1);
  return sys;
}

sysid::NoiseModel bench_noise() {
  sysid::NoiseModel noise;
  noise.initial = sysid::DistributionSpec::uniform(-1.0, 1.0);
  noise.process = sysid::DistributionSpec::uniform(-0.5, 0.5);
  noise.observation = sysid::DistributionSpec::uniform(0.0, 1.0);
  return noise;
}

void bm_simulate(benchmark::State& state) {
  const int steps = static_cast<int>(state.range(0));
  const auto sys = bench_system();
  const auto noise = bench_noise();
  std::uint64_t seed = 1;
  for (auto _ : state) {
    auto traj = sysid::simulate(sys, noise, steps, seed++, false);
    benchmark::DoNotOptimize(traj);
  }
}

void bm_proposed_infer(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  const auto traj = sysid::simulate(bench_system(), bench_noise(), p + 1, 7, false);
  const auto family = sysid::IndexFamily::chain(1, p);
  for (auto _ : state) {
    auto result = sysid::proposed_infer(traj, family);
    benchmark::DoNotOptimize(result);
  }
}

void bm_naive_infer(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  const auto traj = sysid::simulate(bench_system(), bench_noise(), p, 7, false);
  for (auto _ : state) {
    auto result = sysid::naive_infer(traj, 1, p);
    benchmark::DoNotOptimize(result);
  }
}

void bm_covariance_norm(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  const auto var = sysid::variances(bench_noise());
  const auto family = sysid::IndexFamily::chain(1, p);
  for (auto _ : state) {
    const sysid::EtaCovariance cov(family, var, 4);
    benchmark::DoNotOptimize(cov.norm());
  }
}

void bm_whitened_map_norm(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  const auto sys = bench_system();
  const auto var = sysid::variances(bench_noise());
  const auto family = sysid::IndexFamily::chain(1, p);
  const auto moments = sysid::gamma_and_whitener(sys.A, var, family);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        sysid::pi_upsilon_norm(sys.A, moments.whitener, family));
  }
}

void bm_select_greedy(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  const auto sys = bench_system();
  const auto var = sysid::variances(bench_noise());
  const sysid::ComplexityConfig config;
  const auto bounds = sysid::make_bound_set(
      1, p, 4, var, sysid::exact_spectral_bounds(sys.A, 1, p));
  for (auto _ : state) {
    auto result = sysid::select(1, p, config, bounds,
                                sysid::SelectionStrategy::Greedy);
    benchmark::DoNotOptimize(result);
  }
}

}  // namespace

BENCHMARK(bm_simulate)->Arg(64)->Arg(256)->Arg(1024);
BENCHMARK(bm_proposed_infer)->Arg(16)->Arg(64)->Arg(256);
BENCHMARK(bm_naive_infer)->Arg(16)->Arg(64)->Arg(256);
BENCHMARK(bm_covariance_norm)->Arg(8)->Arg(32)->Arg(128);
BENCHMARK(bm_whitened_map_norm)->Arg(8)->Arg(16)->Arg(32);
BENCHMARK(bm_select_greedy)->Arg(6)->Arg(10)->Arg(16);

BENCHMARK_MAIN();
