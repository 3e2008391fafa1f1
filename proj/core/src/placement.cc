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

#include "cachepool/placement.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <queue>
#include <sstream>
#include <string>
#include <utility>

#include "cachepool/bounds.h"
#include "cachepool/errors.h"
#include "cachepool/knapsack.h"
#include "cachepool/random.h"

namespace cachepool {
namespace {

void RequirePositive(int64_t value, const char* name) {
  if (value < 1) {
    throw InvalidArgument(std::string(name) + " must be >= 1, got " +
                          std::to_string(value));
  }
}

}  // namespace

PlacementPlan::PlacementPlan(int m, int a, int k, int n)
    : m_(m), a_(a), k_(k), n_(n) {
  RequirePositive(m, "m");
  RequirePositive(a, "a");
  RequirePositive(k, "k");
  RequirePositive(n, "n");
  stores_.resize(static_cast<size_t>(m));
  holders_.resize(static_cast<size_t>(n) * a);
}

bool PlacementPlan::Contains(int cache, SubFileId id) const {
  const auto& h = holders(id);
  return std::find(h.begin(), h.end(), cache) != h.end();
}

bool PlacementPlan::CanStore(int cache, SubFileId id) const {
  return load(cache) < slots_per_cache() && !Contains(cache, id);
}

bool PlacementPlan::Store(int cache, SubFileId id) {
  if (cache < 0 || cache >= m_) {
    throw InvalidArgument("cache id " + std::to_string(cache) +
                          " out of range");
  }
  if (id.content < 1 || id.content > n_ || id.part < 1 || id.part > a_) {
    throw InvalidArgument("sub-file " + std::to_string(id.content) + ":" +
                          std::to_string(id.part) + " out of range");
  }
  if (!CanStore(cache, id)) return false;
  stores_[cache].push_back(id);
  holders_[LinearIndex(id, a_) - 1].push_back(cache);
  ++total_copies_;
  return true;
}

std::vector<std::string> CheckPlan(const PlacementPlan& plan) {
  std::vector<std::string> problems;
  int64_t total = 0;
  for (int c = 0; c < plan.m(); ++c) {
    std::vector<SubFileId> held(plan.stores(c).begin(), plan.stores(c).end());
    total += static_cast<int64_t>(held.size());
    if (static_cast<int64_t>(held.size()) > plan.slots_per_cache()) {
      problems.push_back("cache " + std::to_string(c + 1) + " holds " +
                         std::to_string(held.size()) + " sub-files, limit " +
                         std::to_string(plan.slots_per_cache()));
    }
    std::sort(held.begin(), held.end());
    if (std::adjacent_find(held.begin(), held.end()) != held.end()) {
      problems.push_back("cache " + std::to_string(c + 1) +
                         " holds a duplicate sub-file");
    }
    for (SubFileId id : held) {
      if (id.content < 1 || id.content > plan.n() || id.part < 1 ||
          id.part > plan.a()) {
        problems.push_back("cache " + std::to_string(c + 1) +
                           " holds an out-of-range sub-file");
      }
    }
  }
  // Total storage in file units is total / a.
  if (total > static_cast<int64_t>(plan.m()) * plan.slots_per_cache()) {
    problems.push_back("plan stores more than m * k file units");
  }
  return problems;
}

void WritePlan(const PlacementPlan& plan, std::ostream& out) {
  for (int c = 0; c < plan.m(); ++c) {
    out << (c + 1) << '\t';
    bool first = true;
    for (SubFileId id : plan.stores(c)) {
      if (!first) out << ',';
      out << id.content << ':' << id.part;
      first = false;
    }
    out << '\n';
  }
}

std::string FormatPlan(const PlacementPlan& plan) {
  std::ostringstream out;
  WritePlan(plan, out);
  return out.str();
}

ReplicationCounts PpReplicationCounts(const PopularityProfile& profile, int m,
                                      int k, int a) {
  RequirePositive(m, "m");
  RequirePositive(k, "k");
  RequirePositive(a, "a");
  const int64_t n = profile.n();
  const int64_t budget = static_cast<int64_t>(m) * k;

  ReplicationCounts counts;
  counts.d.assign(static_cast<size_t>(n), 0);
  std::vector<double> remainder(static_cast<size_t>(n));
  int64_t assigned = 0;
  for (int64_t i = 0; i < n; ++i) {
    const double share = static_cast<double>(budget) * profile.p(i + 1);
    const double whole = std::floor(share);
    counts.d[i] = static_cast<int64_t>(whole);
    remainder[i] = share - whole;
    assigned += counts.d[i];
  }
  // Hand the leftover copies to the largest remainders, popular files first
  // on ties.
  std::vector<int64_t> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), int64_t{0});
  std::stable_sort(order.begin(), order.end(), [&](int64_t x, int64_t y) {
    return remainder[x] > remainder[y];
  });
  for (int64_t j = 0; assigned < budget && j < n; ++j, ++assigned) {
    ++counts.d[order[j]];
  }

  counts.min_copy_dropped = n > budget;
  const int64_t floor_copies = counts.min_copy_dropped ? 0 : 1;
  int64_t total = 0;
  for (int64_t& d : counts.d) {
    d = std::clamp<int64_t>(d, floor_copies, m);
    total += d;
  }

  // Raising zeros to one can overshoot the budget; trim the largest entries,
  // less popular first on ties.
  if (total > budget) {
    auto cmp = [&](int64_t x, int64_t y) {
      if (counts.d[x] != counts.d[y]) return counts.d[x] < counts.d[y];
      return x < y;
    };
    std::priority_queue<int64_t, std::vector<int64_t>, decltype(cmp)> heap(
        cmp, order);
    while (total > budget) {
      const int64_t i = heap.top();
      heap.pop();
      if (counts.d[i] <= floor_copies) {
        throw InternalError("replication rebalancing ran out of copies");
      }
      --counts.d[i];
      --total;
      heap.push(i);
    }
  }
  return counts;
}

PlacementPlan PpPlace(const ReplicationCounts& counts, int m, int a, int k,
                      uint64_t seed) {
  const int n = static_cast<int>(counts.d.size());
  PlacementPlan plan(m, a, k, n);
  int64_t total = 0;
  for (int64_t d : counts.d) {
    if (d < 0 || d > m) {
      throw InvalidArgument("replication count outside [0, m]");
    }
    total += d;
  }
  if (total > static_cast<int64_t>(m) * k) {
    throw InvalidArgument("replication counts exceed m * k copies");
  }

  Rng rng(seed);
  int cursor = static_cast<int>(UniformIndex(rng, static_cast<uint64_t>(m)));
  // last_content[c] == i iff cache c already holds a part of file i; files
  // are placed one at a time, so one slot per cache suffices.
  std::vector<int32_t> last_content(static_cast<size_t>(m), 0);
  for (int32_t content = 1; content <= n; ++content) {
    const int64_t d = counts.d[content - 1];
    for (int32_t part = 1; part <= a; ++part) {
      for (int64_t copy = 0; copy < d; ++copy) {
        int chosen = -1;
        for (int probe = 0; probe < m; ++probe) {
          const int c = (cursor + probe) % m;
          if (last_content[c] != content &&
              plan.load(c) < plan.slots_per_cache()) {
            chosen = c;
            break;
          }
        }
        if (chosen < 0) {
          throw PlacementInfeasible(
              "proportional placement: no cache can take another part of "
              "file " + std::to_string(content),
              content);
        }
        plan.Store(chosen, SubFileId{content, part});
        last_content[chosen] = content;
        cursor = (chosen + 1) % m;
      }
    }
  }
  return plan;
}

KsWeights ComputeKsWeights(const PopularityProfile& profile, int m, int64_t r,
                           int a, double delta) {
  RequirePositive(m, "m");
  RequirePositive(r, "r");
  RequirePositive(a, "a");
  const double beta = profile.beta();
  if (!(beta > 1.0)) {
    throw InvalidArgument("knapsack storage weights need beta > 1");
  }
  if (!(delta > 0.0 && delta < beta - 1.0)) {
    throw InvalidArgument("knapsack storage needs 0 < delta < beta - 1");
  }
  const int64_t n = profile.n();
  const double p1 = profile.p(1);
  const double log_m = std::log(static_cast<double>(m));
  const double rd = static_cast<double>(r);

  // With m = 1, log m = 0 and the first band covers every file.
  const double n1_real = std::pow(rd * p1, 1.0 / beta) /
                         std::pow(log_m, 2.0 / beta);
  const int64_t n1 = std::isfinite(n1_real)
                         ? std::min<int64_t>(n, static_cast<int64_t>(n1_real))
                         : n;
  const double n2_real = std::pow(static_cast<double>(m), (1.0 + delta) / beta);
  const int64_t n2 = std::min<int64_t>(
      n, std::isfinite(n2_real) ? static_cast<int64_t>(n2_real) : n);

  const double ad = static_cast<double>(a);
  // A file cannot be on more than m caches.
  const auto ceil_pos = [m](double x) {
    return std::clamp<int64_t>(static_cast<int64_t>(std::ceil(x)), 1, m);
  };
  KsWeights out;
  out.n1 = n1;
  out.n2 = n2;
  out.w.resize(static_cast<size_t>(n));
  out.w[0] = ceil_pos(static_cast<double>(m) / ad);
  const int64_t band3 = ceil_pos(4.0 * p1 * log_m * log_m / ad);
  const int64_t band4 = ceil_pos(4.0 / (ad * delta));
  for (int64_t i = 2; i <= n; ++i) {
    if (i <= n1) {
      out.w[i - 1] = ceil_pos((1.0 + p1 / 2.0) * rd * profile.p(i) / ad);
    } else if (i <= n2) {
      out.w[i - 1] = band3;
    } else {
      out.w[i - 1] = band4;
    }
  }
  return out;
}

KsSelection KsSelect(const PopularityProfile& profile,
                     std::span<const int64_t> weights, int m, int k,
                     int64_t r) {
  RequirePositive(m, "m");
  RequirePositive(k, "k");
  RequirePositive(r, "r");
  const int64_t n = profile.n();
  if (static_cast<int64_t>(weights.size()) != n) {
    throw InvalidArgument("knapsack storage: one weight per file required");
  }
  std::vector<KnapsackItem> items(static_cast<size_t>(n));
  for (int64_t i = 0; i < n; ++i) {
    items[i] = KnapsackItem{i + 1, RequestedAtLeastOnce(profile.p(i + 1), r),
                            static_cast<double>(weights[i])};
  }
  const KnapsackSolution solution =
      SolveFractional(items, static_cast<double>(m) * k);

  KsSelection selection;
  selection.fractions = solution.fractions;
  selection.objective = solution.objective;
  selection.copies.resize(static_cast<size_t>(n));
  for (int64_t i = 0; i < n; ++i) {
    selection.copies[i] = solution.fractions[i] == 1.0 ? weights[i] : 0;
  }
  return selection;
}

PlacementPlan KsPlace(std::span<const int64_t> copies, int m, int a, int k) {
  const int n = static_cast<int>(copies.size());
  PlacementPlan plan(m, a, k, std::max(n, 1));
  int64_t total = 0;
  for (int64_t c : copies) {
    if (c < 0) throw InvalidArgument("negative copy count");
    total += c;
  }
  if (total * a > static_cast<int64_t>(m) * a * k) {
    throw InvalidArgument("selected copies exceed total cache memory");
  }

  // Lay out in plain vectors first; the repair step below moves sub-files
  // between caches, which PlacementPlan does not support.
  const size_t slots = static_cast<size_t>(a) * k;
  std::vector<std::vector<SubFileId>> layout(static_cast<size_t>(m));
  const auto holds = [&](int c, SubFileId id) {
    const auto& v = layout[c];
    return std::find(v.begin(), v.end(), id) != v.end();
  };
  const auto has_room = [&](int c) { return layout[c].size() < slots; };

  int64_t rank = 0;  // 0-based position in the sorted sub-file sequence
  for (int32_t content = 1; content <= n; ++content) {
    for (int64_t copy = 0; copy < copies[content - 1]; ++copy) {
      for (int32_t part = 1; part <= a; ++part, ++rank) {
        const SubFileId id{content, part};
        const int target = static_cast<int>(rank % m);
        bool placed = false;
        for (int probe = 0; probe < m && !placed; ++probe) {
          const int c = (target + probe) % m;
          if (has_room(c) && !holds(c, id)) {
            layout[c].push_back(id);
            placed = true;
          }
        }
        // Every cache with room already holds id. Move some other sub-file
        // from a full cache that lacks id into a cache with room, then put
        // id where it was.
        for (int i = 0; i < m && !placed; ++i) {
          const int open = (target + i) % m;
          if (!has_room(open)) continue;
          for (int j = 0; j < m && !placed; ++j) {
            const int full = (target + j) % m;
            if (full == open || holds(full, id)) continue;
            auto& from = layout[full];
            for (size_t s = 0; s < from.size(); ++s) {
              if (holds(open, from[s])) continue;
              layout[open].push_back(from[s]);
              from[s] = id;
              placed = true;
              break;
            }
          }
        }
        if (!placed) {
          throw PlacementInfeasible(
              "knapsack placement: no cache can take another copy of "
              "sub-file " + std::to_string(content) + ":" +
                  std::to_string(part),
              content);
        }
      }
    }
  }
  for (int c = 0; c < m; ++c) {
    for (SubFileId id : layout[c]) plan.Store(c, id);
  }
  return plan;
}

}  // namespace cachepool
