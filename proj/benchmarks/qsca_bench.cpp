#include "qsca/attacks.hpp"
#include "qsca/bench.hpp"
#include "qsca/devicegen.hpp"
#include "qsca/pulse.hpp"
#include "qsca/reconstruct.hpp"
#include "qsca/scheduler.hpp"
#include "qsca/tracegen.hpp"

#include <benchmark/benchmark.h>

using namespace qsca;

namespace {

const GeneratedDevice& hdev() {
  static const auto g = gen_device(TopologyShape::HShape, 7, 0);
  return g;
}

void BM_SampleDrag(benchmark::State& state) {
  const auto shape = PulseShape::drag(static_cast<int>(state.range(0)), 0.2, 40, 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample(shape));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SampleDrag)->Arg(160)->Arg(1600);

void BM_SampleGaussianSquare(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const auto shape = PulseShape::gaussian_square(d, 0.3, 64, d - 256);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample(shape));
  }
  state.SetItemsProcessed(state.iterations() * d);
}
BENCHMARK(BM_SampleGaussianSquare)->Arg(1408)->Arg(2944);

void BM_Schedule(benchmark::State& state) {
  const auto c = gen_random_circuit(hdev().device, static_cast<int>(state.range(0)), 1, 0.2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(schedule(c, hdev().library, hdev().device));
  }
}
BENCHMARK(BM_Schedule)->Arg(50)->Arg(500);

void BM_TotalPower(benchmark::State& state) {
  const auto c = gen_random_circuit(hdev().device, static_cast<int>(state.range(0)), 1, 0.2);
  const auto s = schedule(c, hdev().library, hdev().device);
  for (auto _ : state) {
    benchmark::DoNotOptimize(total_power(s, hdev().device));
  }
}
BENCHMARK(BM_TotalPower)->Arg(50)->Arg(500);

void BM_Reconstruct(benchmark::State& state) {
  const auto c = gen_random_circuit(hdev().device, static_cast<int>(state.range(0)), 2, 0.0);
  const auto traces = per_channel_power(schedule(c, hdev().library, hdev().device), hdev().device);
  const auto params = suggest_params(hdev().library, hdev().device);
  for (auto _ : state) {
    benchmark::DoNotOptimize(reconstruct(traces, hdev().library, hdev().device, params));
  }
}
BENCHMARK(BM_Reconstruct)->Arg(20)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_UcAccuracy(benchmark::State& state) {
  const auto corpus = bench_corpus(30, 0);
  const auto l = expanded_candidates(corpus, static_cast<int>(state.range(0)), hdev(), 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(uc_accuracy(l, MetricKind::Trace));
  }
  state.counters["candidates"] = static_cast<double>(l.size());
}
BENCHMARK(BM_UcAccuracy)->Arg(1)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);

} // namespace
BENCHMARK_MAIN();
