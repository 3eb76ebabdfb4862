#include <benchmark/benchmark.h>

#include <vector>

#include "rssiest/trial_kernel.hpp"

using namespace rssiest;

namespace {

const SystemConfig kConfig = SystemConfig::from_snr_db(0.0, 4, 4, 1.0);
const TrialRequest kRequest{EstimatorTag::kMapFeedback, 2, 0, TrialQuantity::kSquaredError};

void BM_TrialsSerial(benchmark::State& state) {
  std::vector<double> out(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    fill_trials_serial(kConfig, kRequest, 7, out);
    benchmark::DoNotOptimize(out.data());
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_TrialsParallel(benchmark::State& state) {
  std::vector<double> out(static_cast<std::size_t>(state.range(0)));
  const int threads = static_cast<int>(state.range(1));
  for (auto _ : state) {
    fill_trials_parallel(kConfig, kRequest, 7, out, 0, threads);
    benchmark::DoNotOptimize(out.data());
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_TrialsSerial)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TrialsParallel)
    ->ArgsProduct({{10000, 100000}, {1, 2, 4, 8}})
    ->Unit(benchmark::kMillisecond)
    ->UseRealTime();

BENCHMARK_MAIN();
