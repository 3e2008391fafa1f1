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

#ifndef CACHEPOOL_POPULARITY_H_
#define CACHEPOOL_POPULARITY_H_

#include <cstdint>
#include <span>
#include <vector>

#include "cachepool/random.h"

namespace cachepool {

// Request distribution over a catalog of n files. Ranks are 1-based: rank 1
// is the most popular file. Immutable after construction.
class PopularityProfile {
 public:
  // Takes an explicit probability vector (index 0 holds rank 1). Entries must
  // be nonnegative and sum to 1 within 1e-9; they are renormalized exactly.
  // beta is informational (NaN when the profile is not Zipf).
  static PopularityProfile FromProbabilities(std::vector<double> p,
                                             double beta);

  int64_t n() const { return static_cast<int64_t>(p_.size()); }
  double beta() const { return beta_; }

  // Probability of rank `rank` in [1, n].
  double p(int64_t rank) const { return p_[rank - 1]; }
  std::span<const double> probabilities() const { return p_; }

  // One inverse-CDF draw; returns a rank in [1, n].
  int32_t Draw(Rng& rng) const;

 private:
  PopularityProfile(std::vector<double> p, double beta);

  std::vector<double> p_;
  std::vector<double> cdf_;
  double beta_;
};

// p_i = i^-beta / sum_j j^-beta for i = 1..n.
// Throws InvalidArgument for n < 1 or a negative or non-finite beta.
PopularityProfile ZipfProfile(int64_t n, double beta);

// One time-slot's requests: r i.i.d. ranks drawn from a profile.
struct RequestBatch {
  std::vector<int32_t> requests;
  uint64_t slot_seed = 0;
};

// Draws r requests with a generator seeded from `seed`. Identical
// (profile, r, seed) always yield an identical batch.
RequestBatch SampleBatch(const PopularityProfile& profile, int64_t r,
                         uint64_t seed);

// counts[i - 1] = number of requests for rank i.
// Throws InvalidArgument if a request lies outside [1, n].
std::vector<int64_t> RequestCounts(const RequestBatch& batch, int64_t n);

}  // namespace cachepool

#endif  // CACHEPOOL_POPULARITY_H_
