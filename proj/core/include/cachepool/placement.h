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

#ifndef CACHEPOOL_PLACEMENT_H_
#define CACHEPOOL_PLACEMENT_H_

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "cachepool/popularity.h"

namespace cachepool {

// Part `part` (1..a) of file `content` (1..n). Each part is 1/a file units.
struct SubFileId {
  int32_t content = 1;
  int32_t part = 1;

  friend auto operator<=>(const SubFileId&, const SubFileId&) = default;
};

// 1-based linear index (content - 1) * a + part. Sub-files of less popular
// files have larger indices.
constexpr int64_t LinearIndex(SubFileId id, int a) {
  return static_cast<int64_t>(id.content - 1) * a + id.part;
}

constexpr SubFileId FromLinearIndex(int64_t index, int a) {
  return SubFileId{static_cast<int32_t>((index - 1) / a + 1),
                   static_cast<int32_t>((index - 1) % a + 1)};
}

// Which sub-files each of m caches holds. Cache ids are 0-based. Each cache
// holds at most a * k sub-files (k file units) and never two copies of the
// same sub-file; Store() refuses placements that would break either rule.
class PlacementPlan {
 public:
  PlacementPlan(int m, int a, int k, int n);

  int m() const { return m_; }
  int a() const { return a_; }
  int k() const { return k_; }
  int n() const { return n_; }

  // a * k: sub-file slots per cache.
  int64_t slots_per_cache() const {
    return static_cast<int64_t>(a_) * k_;
  }

  // Returns false (and changes nothing) if the cache is full or already
  // holds `id`. Throws InvalidArgument for an out-of-range cache or id.
  bool Store(int cache, SubFileId id);

  bool CanStore(int cache, SubFileId id) const;
  bool Contains(int cache, SubFileId id) const;

  std::span<const SubFileId> stores(int cache) const { return stores_[cache]; }
  int64_t load(int cache) const {
    return static_cast<int64_t>(stores_[cache].size());
  }

  // Caches holding `id`, in the order they received it.
  std::span<const int32_t> holders(SubFileId id) const {
    return holders_[LinearIndex(id, a_) - 1];
  }
  std::span<const int32_t> holders(int64_t linear_index) const {
    return holders_[linear_index - 1];
  }

  // Sub-file copies across all caches.
  int64_t total_copies() const { return total_copies_; }

 private:
  int m_;
  int a_;
  int k_;
  int n_;
  std::vector<std::vector<SubFileId>> stores_;
  std::vector<std::vector<int32_t>> holders_;
  int64_t total_copies_ = 0;
};

// Re-derives every plan invariant from the per-cache stores. Returns one
// message per violation; empty means the plan is valid.
std::vector<std::string> CheckPlan(const PlacementPlan& plan);

// Line-oriented dump: one line per cache,
//   cache_id<TAB>content:part,content:part,...
// with 1-based cache ids and sub-files in storage order.
void WritePlan(const PlacementPlan& plan, std::ostream& out);
std::string FormatPlan(const PlacementPlan& plan);

// ---------------------------------------------------------------------------
// Proportional placement.

struct ReplicationCounts {
  // d[i - 1] = number of caches holding each part of file i.
  std::vector<int64_t> d;
  // Set when n > m * k: there is not enough memory for one copy of every
  // file, and the least popular files get d = 0.
  bool min_copy_dropped = false;
};

// d_i ~ m * k * p_i. Largest-remainder rounding makes sum(d) = m * k, then
// each d_i is clamped to [1, m] (to [0, m] when n > m * k). If raising
// entries to 1 pushes the sum past m * k, the excess is taken one copy at a
// time from the largest entry, preferring the less popular file on ties.
ReplicationCounts PpReplicationCounts(const PopularityProfile& profile, int m,
                                      int k, int a);

// Places every part of every file on d_i distinct caches such that no cache
// holds two parts of one file. Files go in rank order, parts in order, and
// copies round-robin over caches from a cursor that starts at a seeded random
// offset; a cache that is full or already holds part of the file is skipped.
// Throws PlacementInfeasible naming the file when no cache qualifies.
PlacementPlan PpPlace(const ReplicationCounts& counts, int m, int a, int k,
                      uint64_t seed);

// ---------------------------------------------------------------------------
// Knapsack storage.

// Number of caches each file is stored on if selected (natural logs):
//
//   w_1 = ceil(m / a)
//   w_i = ceil((1 + p_1 / 2) r p_i / a)     1 < i <= n1
//   w_i = ceil(4 p_1 (ln m)^2 / a)          n1 < i <= n2
//   w_i = ceil(4 / (a delta))               n2 < i
//
// with n1 = floor((r p_1)^(1/beta) / (ln m)^(2/beta)) and
// n2 = min(n, floor(m^((1 + delta) / beta))). Requires beta > 1 and
// 0 < delta < beta - 1; throws InvalidArgument otherwise. Every weight is
// clamped to [1, m].
struct KsWeights {
  std::vector<int64_t> w;
  int64_t n1 = 0;
  int64_t n2 = 0;
};
KsWeights ComputeKsWeights(const PopularityProfile& profile, int m, int64_t r,
                           int a, double delta);

// Default delta: midpoint of (0, beta - 1).
inline double DefaultKsDelta(double beta) { return (beta - 1.0) / 2.0; }

struct KsSelection {
  // copies[i - 1] = file copies of file i to store: w_i when the knapsack
  // takes the file whole, otherwise 0. A partially taken file is dropped.
  std::vector<int64_t> copies;
  std::vector<double> fractions;
  double objective = 0.0;
};

// Fractional knapsack with value 1 - (1 - p_i)^r (probability that file i
// is requested in the slot), weight w_i, and capacity m * k.
KsSelection KsSelect(const PopularityProfile& profile,
                     std::span<const int64_t> weights, int m, int k,
                     int64_t r);

// Lays file copies out in increasing file index, splits each copy into its
// a parts, and stores the l-th sub-file copy (0-based) on cache l mod m. A
// target that is full or already holds that sub-file is skipped for the
// next cache. If every cache with room already holds it, one sub-file is
// moved from a full cache that lacks it into a cache with room to make a
// place. Throws PlacementInfeasible when even that fails, which happens
// when a file has more than m copies.
PlacementPlan KsPlace(std::span<const int64_t> copies, int m, int a, int k);

}  // namespace cachepool

#endif  // CACHEPOOL_PLACEMENT_H_
