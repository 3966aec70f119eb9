// Serial versus OpenMP trial loop, plus the per-instance SDP cost that
// dominates one trial.

#include <benchmark/benchmark.h>

#include "irs/beamforming.hpp"
#include "irs/experiment.hpp"
#include "irs/training.hpp"

namespace {

irs::ExperimentConfig bench_config(std::size_t trials) {
  auto c = irs::default_config(irs::ExperimentKind::rate_vs_groups);
  c.m_groups = {4, 8};
  c.bits = {2};
  c.trials = trials;
  c.randomization_samples = 200;
  return c;
}

void run(benchmark::State& state, irs::Execution execution) {
  const auto config = bench_config(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(irs::rate_vs_groups(config, execution));
  state.SetItemsProcessed(state.iterations() * state.range(0) * 2);
}

void BM_TrialsSerial(benchmark::State& state) { run(state, irs::Execution::serial); }
void BM_TrialsParallel(benchmark::State& state) { run(state, irs::Execution::parallel); }

void BM_SolveSdp(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  irs::Rng rng = irs::make_rng(7, {m});
  irs::BeamformingProblem prob;
  for (std::size_t i = 0; i <= m; ++i) prob.h_tilde.push_back(irs::complex_gaussian(rng, 1.0));
  const auto pattern = irs::design_pattern(m, irs::PhaseShiftSet(2));
  prob.r_p = irs::hermitian_part(irs::invert(pattern.gram()));
  const auto data = irs::charnes_cooper(prob);
  for (auto _ : state) benchmark::DoNotOptimize(irs::solve_sdp(data));
}

}  // namespace

BENCHMARK(BM_TrialsSerial)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_TrialsParallel)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SolveSdp)->Arg(4)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
