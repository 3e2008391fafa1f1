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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cachepool/bounds.h"
#include "cachepool/config.h"
#include "cachepool/delivery.h"
#include "cachepool/errors.h"
#include "cachepool/harness.h"
#include "cachepool/knapsack.h"
#include "cachepool/placement.h"
#include "cachepool/popularity.h"
#include "oracles.h"

namespace cachepool {
namespace {

using Clock = std::chrono::steady_clock;

struct Verdict {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void Check(const std::string& name, double budget_s,
           const std::function<Verdict()>& body) {
  auto start = Clock::now();
  Verdict v;
  try {
    v = body();
  } catch (const std::exception& e) {
    v = {false, std::string("exception: ") + e.what()};
  }
  double took = std::chrono::duration<double>(Clock::now() - start).count();
  if (took > budget_s) {
    v.pass = false;
    v.detail += " [over time budget]";
  }
  if (!v.pass) ++failures;
  char buf[64];
  std::snprintf(buf, sizeof buf, " (%.2fs, budget %.0fs)", took, budget_s);
  std::cout << (v.pass ? "[PASS] " : "[FAIL] ") << name << ": " << v.detail
            << buf << std::endl;
}

std::string Fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

struct Fit {
  double slope = 0, r2 = 0;
};

Fit LinearFit(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0, syy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  Fit f;
  f.slope = sxy / sxx;
  f.r2 = syy > 0 ? sxy * sxy / (sxx * syy) : 1.0;
  return f;
}

std::vector<SweepRow> RowsFor(const std::vector<SweepRow>& rows,
                              DeliveryPolicy policy) {
  std::vector<SweepRow> out;
  for (const auto& r : rows) {
    if (r.delivery == policy) out.push_back(r);
  }
  return out;
}

PlacementPlan RandomPlan(std::mt19937_64& gen, int m, int a, int k, int n) {
  PlacementPlan plan(m, a, k, n);
  for (int c = 0; c < m; ++c) {
    for (int tries = 0; plan.load(c) < int64_t{a} * k && tries < 40; ++tries) {
      plan.Store(c, SubFileId{int32_t(1 + gen() % n), int32_t(1 + gen() % a)});
    }
  }
  return plan;
}

Verdict MatchingOracle() {
  std::mt19937_64 gen(1);
  int instances = 0, mismatches = 0;
  for (int t = 0; t < 3000; ++t) {
    int m = 1 + gen() % 4, a = 1 + gen() % 2, k = 1 + gen() % 2,
        n = 1 + gen() % 4;
    auto plan = RandomPlan(gen, m, a, k, n);
    std::vector<SubRequest> subs;
    int count = 1 + gen() % 8;
    for (int s = 0; s < count; ++s) {
      subs.push_back({s + 1, {int32_t(1 + gen() % n), int32_t(1 + gen() % a)}});
    }
    auto as = OmrMatch(plan, subs);
    Finalize(plan, subs, as);
    int got = static_cast<int>(std::count_if(
        as.begin(), as.end(), [](int32_t c) { return c != kServer; }));
    if (got != oracle::MaxMatching(plan, subs)) ++mismatches;
    ++instances;
  }
  return {mismatches == 0, std::to_string(instances) + " instances, " +
                               std::to_string(mismatches) + " mismatches"};
}

Verdict KnapsackOracle() {
  std::mt19937_64 gen(2);
  std::uniform_real_distribution<double> val(0, 10), wt(0.05, 6), frac(0, 1.2);
  double worst = 0;
  for (int t = 0; t < 500; ++t) {
    int j = 1 + gen() % 8;
    std::vector<double> v(j), w(j);
    std::vector<KnapsackItem> items;
    double total = 0;
    for (int i = 0; i < j; ++i) {
      v[i] = val(gen);
      w[i] = wt(gen);
      total += w[i];
      items.push_back({i + 1, v[i], w[i]});
    }
    double cap = frac(gen) * total;
    double diff = std::abs(SolveFractional(items, cap).objective -
                           oracle::KnapsackLp(v, w, cap));
    worst = std::max(worst, diff);
  }
  return {worst <= 1e-9, "500 instances, max |diff| = " + Fmt(worst)};
}

Verdict KsWorkedExample() {
  std::vector<int64_t> copies = {2, 1, 1};
  std::string got = FormatPlan(KsPlace(copies, 4, 2, 1));
  const std::string want =
      "1\t1:1,2:1\n2\t1:2,2:2\n3\t1:1,3:1\n4\t1:2,3:2\n";
  std::string shown = got;
  std::replace(shown.begin(), shown.end(), '\n', ' ');
  std::replace(shown.begin(), shown.end(), '\t', '=');
  return {got == want, "plan " + shown};
}

std::vector<SweepRow> PoolingRows() {
  static const std::vector<SweepRow> rows = [] {
    SweepSpec spec = NamedPreset("fig8iii");
    spec.base.iterations = 1000;
    return RunSweep(spec);
  }();
  return rows;
}

Verdict ExponentialDecay() {
  Verdict v;
  auto rows = PoolingRows();
  for (auto policy : {DeliveryPolicy::kOmr, DeliveryPolicy::kMlp,
                      DeliveryPolicy::kOrr, DeliveryPolicy::kOllr}) {
    std::vector<double> x, y;
    for (const auto& r : RowsFor(rows, policy)) {
      if (r.summary.mean > 1) {
        x.push_back(*r.value);
        y.push_back(std::log(r.summary.mean));
      }
    }
    bool ok = x.size() >= 3;
    Fit f;
    if (ok) {
      f = LinearFit(x, y);
      ok = f.slope < 0 && f.r2 >= 0.9;
    }
    v.pass = v.pass && ok;
    v.detail += std::string(ToString(policy)) + " slope=" + Fmt(f.slope) +
                " R2=" + Fmt(f.r2) + " pts=" + std::to_string(x.size()) + "; ";
  }
  return v;
}

Verdict PolicyOrdering() {
  Verdict v;
  auto rows = PoolingRows();
  auto omr = RowsFor(rows, DeliveryPolicy::kOmr);
  auto mlp = RowsFor(rows, DeliveryPolicy::kMlp);
  auto orr = RowsFor(rows, DeliveryPolicy::kOrr);
  auto ollr = RowsFor(rows, DeliveryPolicy::kOllr);
  int mean_violations = 0;
  for (size_t i = 0; i < mlp.size(); ++i) {
    if (omr[i].summary.mean > mlp[i].summary.mean) ++mean_violations;
    if (mlp[i].summary.mean >
        orr[i].summary.mean + orr[i].summary.ci95_halfwidth) {
      ++mean_violations;
    }
    if (mlp[i].summary.mean >
        ollr[i].summary.mean + ollr[i].summary.ci95_halfwidth) {
      ++mean_violations;
    }
  }

  // Per-instance dominance over every (a, k) split and every trial.
  SweepSpec spec = NamedPreset("fig8iii");
  int64_t trials = 0, dominance_violations = 0;
  for (double value : spec.values) {
    const int64_t ak = static_cast<int64_t>(value);
    for (int64_t a = 1; a <= ak; ++a) {
      if (ak % a) continue;
      SimConfig c = ConfigAt(spec, value);
      c.a = a;
      c.k = ak / a;
      c.iterations = 1000;
      auto profile = ZipfProfile(c.n, c.beta);
      std::optional<PlacementPlan> plan;
      try {
        plan.emplace(BuildPlacement(c, profile));
      } catch (const PlacementInfeasible&) {
        continue;
      }
      for (int64_t t = 0; t < c.iterations; ++t) {
        c.delivery = DeliveryPolicy::kOmr;
        double o = RunTrial(c, profile, *plan, t);
        c.delivery = DeliveryPolicy::kMlp;
        double m = RunTrial(c, profile, *plan, t);
        if (o > m) ++dominance_violations;
        ++trials;
      }
    }
  }
  v.pass = mean_violations == 0 && dominance_violations == 0;
  v.detail = std::to_string(mlp.size()) + " ak points, " +
             std::to_string(mean_violations) + " mean-order violations; " +
             std::to_string(trials) + " paired trials, " +
             std::to_string(dominance_violations) + " with OMR > MLP";
  return v;
}

SweepSpec KsOnly(const std::string& preset, int64_t iterations) {
  SweepSpec spec = NamedPreset(preset);
  spec.base.iterations = iterations;
  spec.deliveries = {DeliveryPolicy::kMlp};
  spec.base.delivery = DeliveryPolicy::kMlp;
  spec.lower_bound = true;
  return spec;
}

Verdict ScalingLaw() {
  SweepSpec spec = KsOnly("fig9i", 2000);
  spec.values = {250, 500, 1000, 2000};
  auto rows = RunSweep(spec);
  std::vector<double> x, y;
  std::string means;
  for (const auto& r : rows) {
    x.push_back(std::log(*r.value));
    y.push_back(std::log(r.summary.mean));
    means += Fmt(r.summary.mean) + " ";
  }
  Fit f = LinearFit(x, y);
  const double want = 2 - spec.base.beta;
  return {std::abs(f.slope - want) <= 0.25,
          "means " + means + "slope=" + Fmt(f.slope) + " target " +
              Fmt(want) + "+-0.25"};
}

Verdict LowerBoundProximity() {
  int points = 0, below = 0, far = 0;
  double worst_ratio = 0;
  std::string worst_at;
  for (const char* preset : {"fig9i", "fig9ii", "fig9iii"}) {
    SweepSpec spec = KsOnly(preset, NamedPreset(preset).base.iterations);
    for (const auto& r : RunSweep(spec)) {
      ++points;
      double lb = *r.lower_bound;
      if (r.summary.mean < lb - r.summary.ci95_halfwidth) ++below;
      double ratio = r.summary.mean / std::max(lb, 1.0);
      if (ratio > 3) ++far;
      if (ratio > worst_ratio) {
        worst_ratio = ratio;
        worst_at = std::string(preset) + " " + r.axis + "=" + Fmt(*r.value);
      }
    }
  }
  return {below == 0 && far == 0,
          std::to_string(points) + " points; " + std::to_string(below) +
              " below bound-ci95; " + std::to_string(far) +
              " above 3*max(bound,1); worst ratio " + Fmt(worst_ratio) +
              " at " + worst_at};
}

// Counts steps where the mean rises by more than the 95% interval of the
// difference.
int Rises(const std::vector<SweepRow>& rows, std::string* where) {
  int rises = 0;
  for (size_t i = 1; i < rows.size(); ++i) {
    double d = rows[i].summary.mean - rows[i - 1].summary.mean;
    double ci = std::hypot(rows[i].summary.ci95_halfwidth,
                           rows[i - 1].summary.ci95_halfwidth);
    if (d > ci) {
      ++rises;
      *where += rows[i].axis + "=" + Fmt(*rows[i].value) + "(" +
                std::string(ToString(rows[i].delivery)) + ") ";
    }
  }
  return rises;
}

Verdict Monotonicity() {
  int series = 0, rises = 0;
  std::string where;
  for (const char* preset : {"fig8i", "fig8ii"}) {
    auto rows = RunSweep(NamedPreset(preset));
    for (auto policy : NamedPreset(preset).policies()) {
      rises += Rises(RowsFor(rows, policy), &where);
      ++series;
    }
  }
  for (const char* preset : {"fig9ii", "fig9iii"}) {
    SweepSpec spec = KsOnly(preset, NamedPreset(preset).base.iterations);
    spec.lower_bound = false;
    rises += Rises(RunSweep(spec), &where);
    ++series;
  }
  return {rises == 0, std::to_string(series) + " series, " +
                          std::to_string(rises) + " significant rises " +
                          where};
}

// Independent re-check of every plan, assignment and outcome rule.
std::string Audit(const PlacementPlan& plan,
                  const std::vector<SubRequest>& subs, const Assignment& as,
                  const DeliveryOutcome& out) {
  if (!CheckPlan(plan).empty()) return "plan: " + CheckPlan(plan).front();
  for (int c = 0; c < plan.m(); ++c) {
    if (plan.load(c) > int64_t{plan.a()} * plan.k()) return "storage > k";
    std::set<SubFileId> seen(plan.stores(c).begin(), plan.stores(c).end());
    if (seen.size() != plan.stores(c).size()) return "duplicate sub-file";
  }
  if (as.size() != subs.size()) return "assignment length";
  std::vector<int> used(plan.m(), 0);
  std::set<SubFileId> server;
  for (size_t s = 0; s < subs.size(); ++s) {
    if (as[s] == kServer) {
      server.insert(subs[s].target);
      continue;
    }
    if (as[s] < 0 || as[s] >= plan.m()) return "bad cache id";
    if (!plan.Contains(as[s], subs[s].target)) return "coverage";
    if (++used[as[s]] > plan.a()) return "slot limit";
  }
  if (std::vector<SubFileId>(server.begin(), server.end()) !=
      out.server_subfiles) {
    return "dedup";
  }
  double units = out.rate * plan.a();
  if (units != std::round(units) ||
      static_cast<size_t>(units) != server.size()) {
    return "rate quantization";
  }
  return "";
}

Verdict InvariantSuite() {
  std::mt19937_64 gen(9);
  int configs = 0, infeasible = 0, problems = 0;
  std::string first;
  while (configs < 1000) {
    SimConfig c;
    c.n = 1 + gen() % 120;
    c.m = 1 + gen() % 40;
    c.k = 1 + gen() % 5;
    c.a = 1 + gen() % 4;
    c.r = 1 + gen() % (2 * *c.m);
    bool ks = gen() % 2;
    c.placement = ks ? PlacementPolicy::kKs : PlacementPolicy::kPp;
    c.beta = ks ? 1.05 + (gen() % 90) / 100.0 : (gen() % 250) / 100.0;
    c.delivery = static_cast<DeliveryPolicy>(gen() % 4);
    c.master_seed = gen();
    auto profile = ZipfProfile(c.n, c.beta);
    std::optional<PlacementPlan> plan;
    try {
      plan.emplace(BuildPlacement(c, profile));
    } catch (const PlacementInfeasible&) {
      ++infeasible;
      continue;
    }
    ++configs;
    for (int64_t t = 0; t < 3; ++t) {
      auto batch = SampleBatch(profile, c.requests(),
                               DeriveSeed(TrialSeed(c.master_seed, t), 0));
      auto subs = SplitRequests(batch, static_cast<int>(c.a));
      auto as = Deliver(c.delivery, *plan, subs,
                        DeriveSeed(TrialSeed(c.master_seed, t), 1));
      auto out = Finalize(*plan, subs, as);
      std::string why = Audit(*plan, subs, as, out);
      if (!why.empty()) {
        if (first.empty()) first = why;
        ++problems;
      }
      auto via_harness = RunTrialOutcome(c, profile, *plan, t);
      if (via_harness.rate != out.rate) {
        if (first.empty()) first = "harness trial differs";
        ++problems;
      }
    }
  }
  return {problems == 0, std::to_string(configs) + " configs (" +
                             std::to_string(infeasible) +
                             " infeasible layouts redrawn), " +
                             std::to_string(problems) + " violations " +
                             first};
}

Verdict Unimodality() {
  auto profile = ZipfProfile(100, 1.2);
  auto curve = ComputeValueWeightCurve(profile, 100, 1);
  const auto& z = curve.z;
  std::vector<int64_t> peaks;
  for (size_t i = 0; i < z.size(); ++i) {
    bool left = i == 0 || z[i] > z[i - 1];
    bool right = i + 1 == z.size() || z[i] > z[i + 1];
    if (left && right) peaks.push_back(static_cast<int64_t>(i + 1));
  }
  int64_t top = std::max_element(z.begin(), z.end()) - z.begin() + 1;
  std::string list;
  for (int64_t p : peaks) list += std::to_string(p) + " ";
  bool single = peaks.size() == 1;
  bool near = std::abs(top - curve.peak_rank) <= 1;
  return {single && near,
          "peak rank " + std::to_string(curve.peak_rank) + ", global max at " +
              std::to_string(top) + ", local maxima at ranks " + list};
}

int RunSimulate(const std::string& args) {
  std::string cmd = std::string(SIMULATE_PATH) + " " + args;
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string Slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Verdict Determinism() {
  const std::string one = "acceptance_det_w1.csv", four = "acceptance_det_w4.csv";
  int s1 = RunSimulate("--preset fig8iii --seed 42 --workers 1 --out " + one);
  int s4 = RunSimulate("--preset fig8iii --seed 42 --workers 4 --out " + four);
  std::string a = Slurp(one), b = Slurp(four);
  std::remove(one.c_str());
  std::remove(four.c_str());
  bool same = s1 == 0 && s4 == 0 && !a.empty() && a == b;
  return {same, "exit codes " + std::to_string(s1) + "/" + std::to_string(s4) +
                    ", " + std::to_string(a.size()) + " bytes, " +
                    (a == b ? "identical" : "different")};
}

}  // namespace
}  // namespace cachepool

int main() {
  using namespace cachepool;
  Check("matching oracle", 1, MatchingOracle);
  Check("knapsack oracle", 1, KnapsackOracle);
  Check("knapsack storage worked example", 1, KsWorkedExample);
  Check("exponential decay in ak", 120, ExponentialDecay);
  Check("policy ordering", 120, PolicyOrdering);
  Check("scaling law in n", 300, ScalingLaw);
  Check("lower bound validity and proximity", 300, LowerBoundProximity);
  Check("monotonicity", 300, Monotonicity);
  Check("invariant suite", 30, InvariantSuite);
  Check("value-weight unimodality", 1, Unimodality);
  Check("determinism across worker counts", 240, Determinism);
  std::cout << (failures == 0 ? "all criteria passed"
                              : std::to_string(failures) + " criteria failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
