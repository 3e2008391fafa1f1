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

#include "cachepool/harness.h"

#include <algorithm>
#include <cmath>
#include <exception>
#include <thread>
#include <utility>

#include "cachepool/bounds.h"
#include "cachepool/errors.h"
#include "cachepool/random.h"

namespace cachepool {

RateSummary Summarize(std::vector<double> rates) {
  RateSummary summary;
  summary.iterations = static_cast<int64_t>(rates.size());
  if (rates.empty()) return summary;
  std::sort(rates.begin(), rates.end());
  double sum = 0.0;
  int64_t zeros = 0;
  for (double x : rates) {
    sum += x;
    zeros += x == 0.0 ? 1 : 0;
  }
  const double count = static_cast<double>(rates.size());
  summary.mean = sum / count;
  summary.zero_rate_fraction = static_cast<double>(zeros) / count;
  if (rates.size() > 1) {
    double squares = 0.0;
    for (double x : rates) squares += (x - summary.mean) * (x - summary.mean);
    summary.stddev = std::sqrt(squares / (count - 1.0));
    summary.ci95_halfwidth = 1.96 * summary.stddev / std::sqrt(count);
  }
  return summary;
}

uint64_t TrialSeed(uint64_t master_seed, int64_t trial_index) {
  return DeriveSeed(master_seed, static_cast<uint64_t>(trial_index));
}

PlacementPlan BuildPlacement(const SimConfig& config,
                             const PopularityProfile& profile) {
  const int m = static_cast<int>(config.caches());
  const int a = static_cast<int>(config.a);
  const int k = static_cast<int>(config.k);
  if (config.placement == PlacementPolicy::kPp) {
    const ReplicationCounts counts = PpReplicationCounts(profile, m, k, a);
    return PpPlace(counts, m, a, k,
                   DeriveSeed(config.master_seed, kPlacementStream));
  }
  const KsWeights weights =
      ComputeKsWeights(profile, m, config.requests(), a, config.ks_delta());
  const KsSelection selection =
      KsSelect(profile, weights.w, m, k, config.requests());
  PlacementPlan plan = KsPlace(selection.copies, m, a, k);
  return plan;
}

DeliveryOutcome RunTrialOutcome(const SimConfig& config,
                                const PopularityProfile& profile,
                                const PlacementPlan& plan,
                                int64_t trial_index) {
  const uint64_t trial_seed = TrialSeed(config.master_seed, trial_index);
  const RequestBatch batch =
      SampleBatch(profile, config.requests(), DeriveSeed(trial_seed, 0));
  const std::vector<SubRequest> subrequests =
      SplitRequests(batch, plan.a());
  Assignment assignment = Deliver(config.delivery, plan, subrequests,
                                  DeriveSeed(trial_seed, 1));
  return Finalize(plan, subrequests, std::move(assignment));
}

double RunTrial(const SimConfig& config, const PopularityProfile& profile,
                const PlacementPlan& plan, int64_t trial_index) {
  return RunTrialOutcome(config, profile, plan, trial_index).rate;
}

RateSummary RunMonteCarlo(const SimConfig& config,
                          const PopularityProfile& profile,
                          const PlacementPlan& plan, int workers) {
  const int64_t iterations = config.iterations;
  if (iterations < 1) throw InvalidArgument("iterations must be >= 1");
  std::vector<double> rates(static_cast<size_t>(iterations));
  const int threads = static_cast<int>(
      std::clamp<int64_t>(workers, 1, iterations));
  if (threads == 1) {
    for (int64_t i = 0; i < iterations; ++i) {
      rates[i] = RunTrial(config, profile, plan, i);
    }
    return Summarize(std::move(rates));
  }

  std::vector<std::exception_ptr> errors(static_cast<size_t>(threads));
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(threads));
  for (int w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (int64_t i = w; i < iterations; i += threads) {
          rates[i] = RunTrial(config, profile, plan, i);
        }
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (std::thread& t : pool) t.join();
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return Summarize(std::move(rates));
}

RateSummary RunMonteCarlo(const SimConfig& config, int workers) {
  config.Validate();
  const PopularityProfile profile = ZipfProfile(config.n, config.beta);
  const PlacementPlan plan = BuildPlacement(config, profile);
  return RunMonteCarlo(config, profile, plan, workers);
}

SimConfig ConfigAt(const SweepSpec& spec, double value) {
  SimConfig config = spec.base;
  const auto as_int = [value] { return static_cast<int64_t>(value); };
  if (spec.axis == "k") {
    config.k = as_int();
  } else if (spec.axis == "a") {
    config.a = as_int();
  } else if (spec.axis == "n") {
    config.n = as_int();
  } else if (spec.axis == "beta") {
    config.beta = value;
  }
  return config;
}

std::vector<SweepRow> RunSweep(const SweepSpec& spec, int workers) {
  spec.Validate();
  const std::vector<DeliveryPolicy> policies = spec.policies();
  std::vector<double> points = spec.values;
  const bool no_axis = spec.axis == "none";
  if (no_axis) points = {0.0};

  std::vector<SweepRow> rows;
  for (double value : points) {
    const SimConfig at = ConfigAt(spec, value);
    std::vector<std::pair<int64_t, int64_t>> pairs;  // (a, k)
    if (spec.axis == "ak") {
      const int64_t product = static_cast<int64_t>(value);
      for (int64_t a = 1; a <= product; ++a) {
        if (product % a == 0) pairs.emplace_back(a, product / a);
      }
    } else {
      pairs.emplace_back(at.a, at.k);
    }

    std::vector<SweepRow> best(policies.size());
    std::vector<bool> have(policies.size(), false);
    std::exception_ptr last_infeasible;
    for (const auto& [a, k] : pairs) {
      SimConfig config = at;
      config.a = a;
      config.k = k;
      config.Validate();
      const PopularityProfile profile = ZipfProfile(config.n, config.beta);
      std::optional<PlacementPlan> plan;
      try {
        plan.emplace(BuildPlacement(config, profile));
      } catch (const PlacementInfeasible&) {
        // A factor pair that cannot be laid out is not a candidate.
        if (spec.axis != "ak") throw;
        last_infeasible = std::current_exception();
        continue;
      }
      std::optional<double> bound;
      if (spec.lower_bound) {
        BoundInputs inputs;
        inputs.profile = &profile;
        inputs.m = config.caches();
        inputs.k = config.k;
        inputs.a = config.a;
        inputs.r = config.requests();
        bound = LowerBoundRate(inputs);
      }
      for (size_t p = 0; p < policies.size(); ++p) {
        config.delivery = policies[p];
        const RateSummary summary =
            RunMonteCarlo(config, profile, *plan, workers);
        if (have[p] && !(summary.mean < best[p].summary.mean)) continue;
        SweepRow& row = best[p];
        row.axis = spec.axis;
        row.value = no_axis ? std::nullopt : std::optional<double>(value);
        row.placement = config.placement;
        row.delivery = policies[p];
        row.summary = summary;
        row.seed = config.master_seed;
        row.lower_bound = bound;
        row.delta = config.placement == PlacementPolicy::kKs
                        ? std::optional<double>(config.ks_delta())
                        : std::nullopt;
        if (spec.axis == "ak") {
          row.best_a = a;
          row.best_k = k;
        }
        have[p] = true;
      }
    }
    if (!have.empty() && !have[0]) {
      std::rethrow_exception(last_infeasible);
    }
    rows.insert(rows.end(), best.begin(), best.end());
  }
  return rows;
}

}  // namespace cachepool
