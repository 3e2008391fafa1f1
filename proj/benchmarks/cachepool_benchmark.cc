// Copyright 2026 The cachepool Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdint>
#include <random>
#include <vector>

#include "benchmark/benchmark.h"
#include "cachepool/delivery.h"
#include "cachepool/harness.h"
#include "cachepool/knapsack.h"
#include "cachepool/placement.h"
#include "cachepool/popularity.h"

namespace cachepool {
namespace {

void BM_SampleBatch(benchmark::State& state) {
  auto profile = ZipfProfile(state.range(0), 0.8);
  uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(SampleBatch(profile, state.range(0), seed++));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SampleBatch)->Arg(100)->Arg(1000)->Arg(10000);

void BM_SolveFractional(benchmark::State& state) {
  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> u(0.1, 10.0);
  std::vector<KnapsackItem> items(state.range(0));
  double total = 0;
  for (int64_t j = 0; j < state.range(0); ++j) {
    items[j] = {j + 1, u(gen), u(gen)};
    total += items[j].weight;
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(SolveFractional(items, total / 3));
  }
}
BENCHMARK(BM_SolveFractional)->Arg(1000)->Arg(100000);

void BM_PpPlace(benchmark::State& state) {
  const int n = state.range(0), m = n, k = 4, a = 2;
  auto counts = PpReplicationCounts(ZipfProfile(n, 0.3), m, k, a);
  uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(PpPlace(counts, m, a, k, seed++));
  }
}
BENCHMARK(BM_PpPlace)->Arg(100)->Arg(1000);

// One slot of delivery on the pooling setup: n = m = 1000, r = 800.
void BM_Deliver(benchmark::State& state) {
  SimConfig config;
  config.n = 1000;
  config.m = 1000;
  config.r = 800;
  config.k = 2;
  config.a = 2;
  auto profile = ZipfProfile(config.n, config.beta);
  auto plan = BuildPlacement(config, profile);
  auto subs = SplitRequests(SampleBatch(profile, 800, 7), 2);
  auto policy = static_cast<DeliveryPolicy>(state.range(0));
  state.SetLabel(std::string(ToString(policy)));
  uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(Deliver(policy, plan, subs, seed++));
  }
}
BENCHMARK(BM_Deliver)->DenseRange(0, 3);

}  // namespace
}  // namespace cachepool

BENCHMARK_MAIN();
