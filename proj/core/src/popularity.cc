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

#include "cachepool/popularity.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "cachepool/errors.h"

namespace cachepool {
namespace {

// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void Add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

}  // namespace

PopularityProfile::PopularityProfile(std::vector<double> p, double beta)
    : p_(std::move(p)), beta_(beta) {
  cdf_.resize(p_.size());
  CompensatedSum running;
  for (size_t i = 0; i < p_.size(); ++i) {
    running.Add(p_[i]);
    cdf_[i] = running.value();
  }
  // Draws are in [0, 1); pinning the last entry keeps every draw in range.
  cdf_.back() = 1.0;
}

PopularityProfile PopularityProfile::FromProbabilities(std::vector<double> p,
                                                       double beta) {
  if (p.empty()) {
    throw InvalidArgument("popularity profile needs at least one file");
  }
  CompensatedSum total;
  for (double x : p) {
    if (!(x >= 0.0) || !std::isfinite(x)) {
      throw InvalidArgument("popularity entries must be finite and >= 0");
    }
    total.Add(x);
  }
  const double sum = total.value();
  if (std::abs(sum - 1.0) > 1e-9) {
    throw InvalidArgument("popularity entries sum to " + std::to_string(sum) +
                          ", expected 1");
  }
  for (double& x : p) x /= sum;
  return PopularityProfile(std::move(p), beta);
}

int32_t PopularityProfile::Draw(Rng& rng) const {
  const double u = UniformUnit(rng);
  const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  return static_cast<int32_t>(it - cdf_.begin()) + 1;
}

PopularityProfile ZipfProfile(int64_t n, double beta) {
  if (n < 1) throw InvalidArgument("zipf profile needs n >= 1");
  if (n > std::numeric_limits<int32_t>::max()) {
    throw InvalidArgument("zipf profile: n too large");
  }
  if (!std::isfinite(beta) || beta < 0.0) {
    throw InvalidArgument("zipf exponent must be finite and >= 0");
  }
  std::vector<double> p(static_cast<size_t>(n));
  CompensatedSum total;
  for (int64_t i = 1; i <= n; ++i) {
    p[i - 1] = std::pow(static_cast<double>(i), -beta);
    total.Add(p[i - 1]);
  }
  const double norm = total.value();
  for (double& x : p) x /= norm;
  return PopularityProfile::FromProbabilities(std::move(p), beta);
}

RequestBatch SampleBatch(const PopularityProfile& profile, int64_t r,
                         uint64_t seed) {
  if (r < 1) throw InvalidArgument("request batch needs r >= 1");
  RequestBatch batch;
  batch.slot_seed = seed;
  batch.requests.resize(static_cast<size_t>(r));
  Rng rng(seed);
  for (auto& request : batch.requests) request = profile.Draw(rng);
  return batch;
}

std::vector<int64_t> RequestCounts(const RequestBatch& batch, int64_t n) {
  std::vector<int64_t> counts(static_cast<size_t>(n), 0);
  for (int32_t rank : batch.requests) {
    if (rank < 1 || rank > n) {
      throw InvalidArgument("request rank " + std::to_string(rank) +
                            " outside [1, " + std::to_string(n) + "]");
    }
    ++counts[rank - 1];
  }
  return counts;
}

}  // namespace cachepool
