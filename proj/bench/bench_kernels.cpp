#include <vector>

#include <benchmark/benchmark.h>

#include "diplab/generators.hpp"
#include "diplab/oracles.hpp"
#include "diplab/parallel.hpp"
#include "diplab/sweep.hpp"

using namespace diplab;

namespace {

ExecPolicy policy_of(const benchmark::State& state) {
  return state.range(0) == 0 ? ExecPolicy::serial : ExecPolicy::parallel;
}

void label(benchmark::State& state) { state.SetLabel(std::string(to_string(policy_of(state)))); }

void BM_CographOracleAgreement(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(cograph_oracle_agreement(6, policy_of(state)));
  label(state);
}

void BM_DhOracleAgreement(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(dh_oracle_agreement(6, policy_of(state)));
  label(state);
}

void BM_EstimateError(benchmark::State& state) {
  std::vector<NetworkConfig> instances;
  for (std::uint64_t s = 0; s < 16; ++s) instances.push_back(gen_random_dh(48, s).config);
  const auto dh = make_protocol("dh");
  RunOptions opts;
  opts.policy = policy_of(state);
  for (auto _ : state) {
    benchmark::DoNotOptimize(estimate_error(instances, *dh, HonestProver(), 4, 1, opts));
  }
  label(state);
}

void BM_Sweep(benchmark::State& state) {
  SweepConfig sc;
  sc.ns = {16, 32, 64, 128};
  sc.instances = 4;
  sc.trials = 2;
  sc.policy = policy_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(run_sweep(sc));
  label(state);
}

}  // namespace

BENCHMARK(BM_CographOracleAgreement)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DhOracleAgreement)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EstimateError)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Sweep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

int main(int argc, char** argv) {
  configure_threads_from_env();
  benchmark::Initialize(&argc, argv);
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
