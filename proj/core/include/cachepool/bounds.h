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

#ifndef CACHEPOOL_BOUNDS_H_
#define CACHEPOOL_BOUNDS_H_

#include <cstdint>
#include <string_view>
#include <vector>

#include "cachepool/popularity.h"

namespace cachepool {

// Probability that a file of popularity p is requested at least once in a
// batch of r i.i.d. requests: 1 - (1 - p)^r.
double RequestedAtLeastOnce(double p, int64_t r);

struct BoundInputs {
  const PopularityProfile* profile = nullptr;
  int64_t m = 1;
  int64_t k = 1;  // may be 0: no storage at all
  int64_t a = 1;
  int64_t r = 1;
  // Per-file sizes in file units; empty means every file is 1 unit.
  std::vector<double> sizes;
};

// Lower bound on the expected server rate of any uncoded policy:
//
//   sum_i b_i v_i - O*,   v_i = 1 - (1 - p_i)^r
//
// where O* is the fractional knapsack optimum over per-unit items of value
// v_i and weight max(floor(r p_i / a), 1) with capacity m * k. Units of one
// file share a ratio, so they are aggregated into a single item of value
// b_i v_i and weight b_i w_i. The result is clamped at 0.
double LowerBoundRate(const BoundInputs& inputs);

struct ValueWeightCurve {
  // z[i - 1] for rank i.
  std::vector<double> z;
  // ceil((r p_1 / (2a))^(1/beta)), capped at n.
  int64_t peak_rank = 1;
  // Ranks <= peak_rank whose floor(r p_i / a) is 0; they use the v_i branch.
  std::vector<int64_t> guarded_ranks;
};

// Value-to-weight ratio of each file in the lower-bound knapsack:
// z_i = v_i / floor(r p_i / a) for i <= peak_rank, v_i beyond.
// Throws InvalidArgument unless the profile's beta is positive.
ValueWeightCurve ComputeValueWeightCurve(const PopularityProfile& profile,
                                         int64_t r, int64_t a);

// Reference curves for plotting simulated rates against the asymptotic
// orders. Constants are supplied by the caller and never fitted here.
enum class EnvelopeRegime {
  kFlatUpper,    // beta < 1, proportional placement + optimal matching
  kFlatLower,    // beta < 1, any uncoded policy
  kSkewedLower,  // 1 < beta < 2, any uncoded policy
  kSkewedUpper,  // 1 < beta < 2, knapsack storage + match least popular
};

std::string_view ToString(EnvelopeRegime regime);
// Accepts "flat_upper", "flat_lower", "skewed_lower", "skewed_upper".
EnvelopeRegime ParseEnvelopeRegime(std::string_view name);

struct EnvelopeParams {
  double c1 = 1.0;     // decay constant of the flat upper envelope, > 0
  double c2 = 1.0;     // decay constant of the flat lower envelope, > 0
  double gamma = 0.0;  // a = m^gamma, in [0, 1]
  double c = 1.0;      // n / m
  double beta = 0.0;   // used by the skewed regimes
};

// kFlatUpper:   n if k < c, else min(n, n k exp(-c1 a k))
// kFlatLower:   n if k < c, else n exp(-c2 a k ln(a k))
// kSkewedLower: n^(2-beta) if k < c, n^((2-beta-gamma)/beta) if k == c, 0
// kSkewedUpper: as kSkewedLower, but 1 when k > c
double OrderEnvelope(EnvelopeRegime regime, const EnvelopeParams& params,
                     double n, double k, double a);

}  // namespace cachepool

#endif  // CACHEPOOL_BOUNDS_H_
