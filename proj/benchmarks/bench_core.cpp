#include <benchmark/benchmark.h>

#include <Eigen/Eigenvalues>

#include "sllm/dynamics.hpp"
#include "sllm/spectra.hpp"
#include "sllm/steady_state.hpp"
#include "sllm/trajectories.hpp"

using namespace sllm;

namespace {

ModelParams params(int n_max) {
  ModelParams p;
  p.A = 1.1;
  p.B = 0.001;
  p.eta = 0.2;
  p.n_max = n_max;
  return p;
}

void BM_BuildSectorBlock(benchmark::State& state) {
  const auto p = params(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(build_sector_block(p, 1));
}
BENCHMARK(BM_BuildSectorBlock)->Arg(100)->Arg(1000);

void BM_EigendecomposeTop(benchmark::State& state) {
  const auto p = params(static_cast<int>(state.range(0)));
  const auto block = build_sector_block(p, 1);
  for (auto _ : state) benchmark::DoNotOptimize(eigendecompose(block, p, {10, true, 0.5}));
}
BENCHMARK(BM_EigendecomposeTop)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_EigendecomposeDense(benchmark::State& state) {
  auto p = params(static_cast<int>(state.range(0)));
  const auto block = build_sector_block(p, 1);
  for (auto _ : state) {
    Eigen::ComplexEigenSolver<ComplexMatrix> es(block.dense(), false);
    benchmark::DoNotOptimize(es.eigenvalues());
  }
}
BENCHMARK(BM_EigendecomposeDense)->Arg(100)->Arg(300)->Unit(benchmark::kMillisecond);

void BM_SteadyState(benchmark::State& state) {
  const auto p = params(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(steady_state(p));
}
BENCHMARK(BM_SteadyState)->Arg(100)->Arg(1000);

void BM_EvolveSector0(benchmark::State& state) {
  const auto p = params(static_cast<int>(state.range(0)));
  DiagonalState p0;
  p0.p = Eigen::VectorXd::Zero(p.n_max + 1);
  p0.p(0) = 1.0;
  for (auto _ : state) benchmark::DoNotOptimize(evolve_sector0(p0, p, {}, {0.0, 20.0}));
}
BENCHMARK(BM_EvolveSector0)->Arg(100)->Arg(500)->Unit(benchmark::kMillisecond);

void BM_EvolveFull(benchmark::State& state) {
  const auto p = params(static_cast<int>(state.range(0)));
  ComplexMatrix rho = ComplexMatrix::Zero(p.n_max + 1, p.n_max + 1);
  rho(0, 0) = 1.0;
  for (auto _ : state) benchmark::DoNotOptimize(evolve_full(rho, p, {0.0, 2.0}));
}
BENCHMARK(BM_EvolveFull)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_CountingTrajectory(benchmark::State& state) {
  auto p = params(20);
  p.B = 0.1;
  TrajectoryOptions o;
  o.t_f = 1.0;
  o.dt = 5e-4;
  o.record_every = 100;
  std::uint64_t seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(counting_trajectory(p, fock_state(0, p.n_max), o, seed++));
  }
}
BENCHMARK(BM_CountingTrajectory)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
