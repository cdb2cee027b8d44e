// Parallel kernels against their serial reference implementations.

#include <benchmark/benchmark.h>

#include <cstdint>
#include <string>
#include <vector>

#include "idkit/code.hpp"
#include "idkit/experiments.hpp"
#include "idkit/gf.hpp"

using namespace idkit;

namespace {

std::vector<std::uint8_t> seed_bytes(const std::string& tag) {
  return std::vector<std::uint8_t>(tag.begin(), tag.end());
}

TrialConfig mc_config() {
  TrialConfig config;
  config.scheme =
      CodeTrialScheme{CodeSpec(Field::get(4), 6, 512, seed_bytes("bench-mc")),
                      1};
  config.trials = 20000;
  config.master_seed = seed_bytes("bench-mc-master");
  return config;
}

void BM_false_accept_serial(benchmark::State& state) {
  const TrialConfig config = mc_config();
  for (auto _ : state)
    benchmark::DoNotOptimize(estimate_false_accept_serial(config));
}
BENCHMARK(BM_false_accept_serial)->Unit(benchmark::kMillisecond);

void BM_false_accept_parallel(benchmark::State& state) {
  const TrialConfig config = mc_config();
  for (auto _ : state)
    benchmark::DoNotOptimize(estimate_false_accept(config));
}
BENCHMARK(BM_false_accept_parallel)->Unit(benchmark::kMillisecond);

CodeSpec distance_spec() {
  return CodeSpec(Field::get(1), 16, 16, seed_bytes("bench-dist"));
}

void BM_min_distance_serial(benchmark::State& state) {
  const CodeSpec spec = distance_spec();
  for (auto _ : state) benchmark::DoNotOptimize(min_distance_serial(spec));
}
BENCHMARK(BM_min_distance_serial)->Unit(benchmark::kMillisecond);

void BM_min_distance_parallel(benchmark::State& state) {
  const CodeSpec spec = distance_spec();
  for (auto _ : state) benchmark::DoNotOptimize(min_distance(spec));
}
BENCHMARK(BM_min_distance_parallel)->Unit(benchmark::kMillisecond);

void BM_vg_sample_serial(benchmark::State& state) {
  const auto seed = seed_bytes("bench-vg");
  for (auto _ : state)
    benchmark::DoNotOptimize(
        vg_sample_serial(Field::get(1), 14, 0.2, 0.1, 100, seed));
}
BENCHMARK(BM_vg_sample_serial)->Unit(benchmark::kMillisecond);

void BM_vg_sample_parallel(benchmark::State& state) {
  const auto seed = seed_bytes("bench-vg");
  for (auto _ : state)
    benchmark::DoNotOptimize(vg_sample(Field::get(1), 14, 0.2, 0.1, 100, seed));
}
BENCHMARK(BM_vg_sample_parallel)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
