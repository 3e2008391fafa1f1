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

#ifndef CACHEPOOL_CONFIG_H_
#define CACHEPOOL_CONFIG_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "cachepool/delivery.h"

namespace cachepool {

enum class PlacementPolicy { kPp, kKs };

std::string_view ToString(PlacementPolicy policy);
// Accepts "pp" or "ks" (any case).
PlacementPolicy ParsePlacementPolicy(std::string_view name);

// One experiment. The cache count is given either directly (m) or as the
// catalog ratio c = n / m, and the batch size either directly (r) or as
// rho = r / m; ratio forms keep their meaning when a sweep changes n.
struct SimConfig {
  int64_t n = 100;
  std::optional<int64_t> m = 100;
  std::optional<double> c;
  std::optional<int64_t> r = 80;
  std::optional<double> rho;
  int64_t k = 1;
  int64_t a = 1;
  double beta = 0.3;
  // Knapsack-storage delta; defaults to (beta - 1) / 2.
  std::optional<double> delta;
  PlacementPolicy placement = PlacementPolicy::kPp;
  DeliveryPolicy delivery = DeliveryPolicy::kMlp;
  int64_t iterations = 1000;
  uint64_t master_seed = 1;

  // round(n / c) when c is set, at least 1.
  int64_t caches() const;
  // round(rho * m) when rho is set, at least 1.
  int64_t requests() const;
  double ks_delta() const;

  // Throws InvalidArgument describing the first problem found.
  void Validate() const;

  friend bool operator==(const SimConfig&, const SimConfig&) = default;
};

enum class OutputFormat { kCsv, kJson };
std::string_view ToString(OutputFormat format);
OutputFormat ParseOutputFormat(std::string_view name);

// A parameter sweep: run `base` once per value of `axis` and per delivery
// policy. axis is one of "none", "k", "a", "ak", "n", "beta".
struct SweepSpec {
  SimConfig base;
  std::string axis = "none";
  std::vector<double> values;
  // Policies to run at each point; empty means just base.delivery.
  std::vector<DeliveryPolicy> deliveries;
  // Adds the uncoded lower bound to every row.
  bool lower_bound = false;
  OutputFormat format = OutputFormat::kCsv;

  std::vector<DeliveryPolicy> policies() const;
  void Validate() const;

  friend bool operator==(const SweepSpec&, const SweepSpec&) = default;
};

// Parses "axis=v1,v2,..." into spec->axis and spec->values.
void ParseSweepArgument(std::string_view text, SweepSpec* spec);
std::string FormatSweepArgument(const SweepSpec& spec);

// Config files are flat JSON objects whose keys mirror the CLI flags:
//   n m c r rho k a beta delta placement delivery iters seed sweep
//   lower_bound format
// "delivery" may list several policies separated by commas. Unknown keys,
// wrong types and conflicting keys (m with c, r with rho) throw
// InvalidArgument.
SweepSpec SweepSpecFromJson(const nlohmann::json& doc);
nlohmann::json SweepSpecToJson(const SweepSpec& spec);
SweepSpec LoadSweepSpec(const std::string& path);

// Built-in experiment presets: fig8i, fig8ii, fig8iii, fig9i, fig9ii, fig9iii.
SweepSpec NamedPreset(std::string_view name);
std::vector<std::string> PresetNames();

}  // namespace cachepool

#endif  // CACHEPOOL_CONFIG_H_
