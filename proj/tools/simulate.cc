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

// simulate: run cache-cluster experiments from flags, a JSON config file or
// a named preset, and write the results as CSV or JSON.
//
//   simulate --preset fig9i --out results.csv
//   simulate --config sweep.json --workers 4
//   simulate --n 100 --m 100 --r 80 --k 2 --a 3 --delivery omr,mlp
//            --sweep beta=0.2,0.4

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "cachepool/config.h"
#include "cachepool/emit.h"
#include "cachepool/errors.h"
#include "cachepool/harness.h"
#include "cachepool/placement.h"
#include "cachepool/popularity.h"

namespace {

constexpr int kExitInvalidConfig = 2;

struct Flags {
  std::string config_path;
  std::string preset;
  std::optional<int64_t> n, m, r, k, a, iters;
  std::optional<double> rho, beta, delta;
  std::optional<uint64_t> seed;
  std::string placement, delivery, format, sweep;
  bool lower_bound = false;
  std::string out_path;
  std::string plan_path;
  int workers = 0;
  bool list_presets = false;
};

cachepool::SweepSpec BuildSpec(const Flags& f) {
  using namespace cachepool;
  SweepSpec spec;
  if (!f.config_path.empty()) {
    spec = LoadSweepSpec(f.config_path);
  } else if (!f.preset.empty()) {
    spec = NamedPreset(f.preset);
  }
  SimConfig& b = spec.base;
  if (f.n) b.n = *f.n;
  if (f.m) {
    b.m = *f.m;
    b.c.reset();
  }
  if (f.r) {
    b.r = *f.r;
    b.rho.reset();
  }
  if (f.rho) {
    b.rho = *f.rho;
    b.r.reset();
  }
  if (f.k) b.k = *f.k;
  if (f.a) b.a = *f.a;
  if (f.beta) b.beta = *f.beta;
  if (f.delta) b.delta = *f.delta;
  if (f.iters) b.iterations = *f.iters;
  if (f.seed) b.master_seed = *f.seed;
  if (!f.placement.empty()) b.placement = ParsePlacementPolicy(f.placement);
  if (!f.delivery.empty()) {
    nlohmann::json patch = SweepSpecToJson(spec);
    patch["delivery"] = f.delivery;
    const SweepSpec patched = SweepSpecFromJson(patch);
    b.delivery = patched.base.delivery;
    spec.deliveries = patched.deliveries;
  }
  if (!f.format.empty()) spec.format = ParseOutputFormat(f.format);
  if (!f.sweep.empty()) ParseSweepArgument(f.sweep, &spec);
  if (f.lower_bound) spec.lower_bound = true;
  spec.Validate();
  return spec;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cache-cluster placement and delivery simulator"};
  Flags f;
  auto* config_opt =
      app.add_option("--config", f.config_path, "JSON config file");
  auto* preset_opt = app.add_option(
      "--preset", f.preset,
      "named preset: fig8i fig8ii fig8iii fig9i fig9ii fig9iii");
  config_opt->excludes(preset_opt);
  app.add_option("--n", f.n, "number of files");
  app.add_option("--m", f.m, "number of caches");
  auto* r_opt = app.add_option("--r", f.r, "requests per slot");
  auto* rho_opt = app.add_option("--rho", f.rho, "requests per cache, r / m");
  r_opt->excludes(rho_opt);
  app.add_option("--k", f.k, "storage per cache, file units");
  app.add_option("--a", f.a, "service slots per cache");
  app.add_option("--beta", f.beta, "Zipf exponent");
  app.add_option("--delta", f.delta, "knapsack storage delta");
  app.add_option("--placement", f.placement, "pp | ks");
  app.add_option("--delivery", f.delivery,
                 "omr | mlp | orr | ollr, or a comma list");
  app.add_option("--iters", f.iters, "Monte Carlo trials per point");
  app.add_option("--seed", f.seed, "master seed");
  app.add_option("--format", f.format, "csv | json");
  app.add_option("--sweep", f.sweep, "axis=v1,v2,... over k a ak n beta");
  app.add_flag("--lower-bound", f.lower_bound,
               "add the uncoded lower bound column");
  app.add_option("--out", f.out_path, "output file (default stdout)");
  app.add_option("--workers", f.workers,
                 "worker threads (default: hardware concurrency)");
  app.add_option("--dump-plan", f.plan_path,
                 "write the base placement plan to this file");
  app.add_flag("--list-presets", f.list_presets, "print preset names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalidConfig;
  }

  if (f.list_presets) {
    for (const std::string& name : cachepool::PresetNames()) {
      std::cout << name << '\n';
    }
    return 0;
  }

  try {
    const cachepool::SweepSpec spec = BuildSpec(f);
    int workers = f.workers;
    if (workers <= 0) {
      workers = static_cast<int>(std::thread::hardware_concurrency());
    }
    if (workers <= 0) workers = 1;

    if (!f.plan_path.empty()) {
      spec.base.Validate();
      const auto profile =
          cachepool::ZipfProfile(spec.base.n, spec.base.beta);
      const auto plan = cachepool::BuildPlacement(spec.base, profile);
      std::ofstream plan_out(f.plan_path);
      if (!plan_out) {
        std::cerr << "cannot write " << f.plan_path << '\n';
        return 1;
      }
      cachepool::WritePlan(plan, plan_out);
    }

    const std::vector<cachepool::SweepRow> rows =
        cachepool::RunSweep(spec, workers);
    if (f.out_path.empty()) {
      cachepool::Emit(rows, spec.format, std::cout);
    } else {
      std::ofstream out(f.out_path, std::ios::binary);
      if (!out) {
        std::cerr << "cannot write " << f.out_path << '\n';
        return 1;
      }
      cachepool::Emit(rows, spec.format, out);
    }
  } catch (const cachepool::InvalidArgument& e) {
    std::cerr << "invalid config: " << e.what() << '\n';
    return kExitInvalidConfig;
  } catch (const cachepool::PlacementInfeasible& e) {
    std::cerr << "invalid config: " << e.what() << '\n';
    return kExitInvalidConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
