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

#ifndef CACHEPOOL_HARNESS_H_
#define CACHEPOOL_HARNESS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cachepool/config.h"
#include "cachepool/delivery.h"
#include "cachepool/placement.h"
#include "cachepool/popularity.h"

namespace cachepool {

struct RateSummary {
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation
  double ci95_halfwidth = 0.0;  // 1.96 * stddev / sqrt(iterations)
  int64_t iterations = 0;
  double zero_rate_fraction = 0.0;

  friend bool operator==(const RateSummary&, const RateSummary&) = default;
};

// Summary of per-trial rates. The rates are sorted before summation so the
// result does not depend on the order trials finished in.
RateSummary Summarize(std::vector<double> rates);

// Seed streams. Everything random in an experiment descends from
// master_seed:
//   placement      DeriveSeed(master_seed, kPlacementStream)
//   trial i        DeriveSeed(master_seed, i)
//     its batch    DeriveSeed(trial seed, 0)
//     its delivery DeriveSeed(trial seed, 1)
inline constexpr uint64_t kPlacementStream = ~uint64_t{0};
uint64_t TrialSeed(uint64_t master_seed, int64_t trial_index);

// Builds the placement plan for a validated config.
PlacementPlan BuildPlacement(const SimConfig& config,
                             const PopularityProfile& profile);

// One slot: sample the batch, split it, deliver, finalize.
DeliveryOutcome RunTrialOutcome(const SimConfig& config,
                                const PopularityProfile& profile,
                                const PlacementPlan& plan,
                                int64_t trial_index);
double RunTrial(const SimConfig& config, const PopularityProfile& profile,
                const PlacementPlan& plan, int64_t trial_index);

// config.iterations trials spread over `workers` threads. The summary is
// identical for any worker count.
RateSummary RunMonteCarlo(const SimConfig& config,
                          const PopularityProfile& profile,
                          const PlacementPlan& plan, int workers = 1);
RateSummary RunMonteCarlo(const SimConfig& config, int workers = 1);

struct SweepRow {
  std::string axis;
  std::optional<double> value;  // empty when axis is "none"
  PlacementPolicy placement = PlacementPolicy::kPp;
  DeliveryPolicy delivery = DeliveryPolicy::kMlp;
  RateSummary summary;
  uint64_t seed = 0;
  std::optional<double> lower_bound;
  // For axis "ak": the (a, k) factor pair with the smallest mean.
  std::optional<int64_t> best_a;
  std::optional<int64_t> best_k;
  // Knapsack-storage delta actually used; empty for proportional placement.
  std::optional<double> delta;

  friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

// One row per (value, policy), values outer. For axis "ak" every factor
// pair a * k = value is simulated and the pair with the smallest mean is
// reported (ties go to the smaller a). Deterministic for any worker count.
std::vector<SweepRow> RunSweep(const SweepSpec& spec, int workers = 1);

// Config at one sweep point, before any (a, k) splitting.
SimConfig ConfigAt(const SweepSpec& spec, double value);

}  // namespace cachepool

#endif  // CACHEPOOL_HARNESS_H_
