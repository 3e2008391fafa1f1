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

#include "cachepool/bounds.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "cachepool/errors.h"
#include "cachepool/knapsack.h"

namespace cachepool {

double RequestedAtLeastOnce(double p, int64_t r) {
  if (p >= 1.0) return 1.0;
  if (p <= 0.0) return 0.0;
  return -std::expm1(static_cast<double>(r) * std::log1p(-p));
}

double LowerBoundRate(const BoundInputs& inputs) {
  if (inputs.profile == nullptr) {
    throw InvalidArgument("lower bound needs a popularity profile");
  }
  const PopularityProfile& profile = *inputs.profile;
  if (inputs.m < 1 || inputs.a < 1 || inputs.r < 1 || inputs.k < 0) {
    throw InvalidArgument("lower bound needs m, a, r >= 1 and k >= 0");
  }
  const int64_t n = profile.n();
  if (!inputs.sizes.empty() &&
      static_cast<int64_t>(inputs.sizes.size()) != n) {
    throw InvalidArgument("lower bound: one size per file required");
  }

  std::vector<KnapsackItem> items(static_cast<size_t>(n));
  double requested_mass = 0.0;
  for (int64_t i = 0; i < n; ++i) {
    const double p = profile.p(i + 1);
    const double size = inputs.sizes.empty() ? 1.0 : inputs.sizes[i];
    if (!(size > 0.0)) throw InvalidArgument("file sizes must be positive");
    const double value = RequestedAtLeastOnce(p, inputs.r);
    const double slots = std::max(
        1.0, std::floor(static_cast<double>(inputs.r) * p /
                        static_cast<double>(inputs.a)));
    items[i] = KnapsackItem{i + 1, size * value, size * slots};
    requested_mass += size * value;
  }
  const double capacity = static_cast<double>(inputs.m) * inputs.k;
  const KnapsackSolution best = SolveFractional(items, capacity);
  return std::max(0.0, requested_mass - best.objective);
}

ValueWeightCurve ComputeValueWeightCurve(const PopularityProfile& profile,
                                         int64_t r, int64_t a) {
  if (!(profile.beta() > 0.0)) {
    throw InvalidArgument("value-weight curve needs a Zipf profile, beta > 0");
  }
  if (r < 1 || a < 1) throw InvalidArgument("need r >= 1 and a >= 1");
  const int64_t n = profile.n();
  const double beta = profile.beta();
  const double peak = std::ceil(std::pow(
      static_cast<double>(r) * profile.p(1) / (2.0 * static_cast<double>(a)),
      1.0 / beta));
  ValueWeightCurve curve;
  curve.peak_rank = std::clamp<int64_t>(static_cast<int64_t>(peak), 1, n);
  curve.z.resize(static_cast<size_t>(n));
  for (int64_t i = 1; i <= n; ++i) {
    const double p = profile.p(i);
    const double value = RequestedAtLeastOnce(p, r);
    if (i > curve.peak_rank) {
      curve.z[i - 1] = value;
      continue;
    }
    const double slots = std::floor(static_cast<double>(r) * p /
                                    static_cast<double>(a));
    if (slots < 1.0) {
      curve.guarded_ranks.push_back(i);
      curve.z[i - 1] = value;
    } else {
      curve.z[i - 1] = value / slots;
    }
  }
  return curve;
}

std::string_view ToString(EnvelopeRegime regime) {
  switch (regime) {
    case EnvelopeRegime::kFlatUpper: return "flat_upper";
    case EnvelopeRegime::kFlatLower: return "flat_lower";
    case EnvelopeRegime::kSkewedLower: return "skewed_lower";
    case EnvelopeRegime::kSkewedUpper: return "skewed_upper";
  }
  return "?";
}

EnvelopeRegime ParseEnvelopeRegime(std::string_view name) {
  for (EnvelopeRegime r :
       {EnvelopeRegime::kFlatUpper, EnvelopeRegime::kFlatLower,
        EnvelopeRegime::kSkewedLower, EnvelopeRegime::kSkewedUpper}) {
    if (name == ToString(r)) return r;
  }
  throw InvalidArgument("unknown envelope regime '" + std::string(name) + "'");
}

double OrderEnvelope(EnvelopeRegime regime, const EnvelopeParams& params,
                     double n, double k, double a) {
  if (!(params.c1 > 0.0) || !(params.c2 > 0.0)) {
    throw InvalidArgument("envelope constants must be positive");
  }
  if (!(params.gamma >= 0.0 && params.gamma <= 1.0)) {
    throw InvalidArgument("envelope gamma must lie in [0, 1]");
  }
  if (!(n > 0.0) || !(k > 0.0) || !(a > 0.0) || !(params.c > 0.0)) {
    throw InvalidArgument("envelope needs positive n, k, a and c");
  }
  const double tol = 1e-9 * std::max(1.0, params.c);
  const bool below = k < params.c - tol;
  const bool at = std::abs(k - params.c) <= tol;
  const double ak = a * k;
  switch (regime) {
    case EnvelopeRegime::kFlatUpper:
      if (below) return n;
      return std::min(n, n * k * std::exp(-params.c1 * ak));
    case EnvelopeRegime::kFlatLower:
      if (below) return n;
      return n * std::exp(-params.c2 * ak * std::log(ak));
    case EnvelopeRegime::kSkewedLower:
    case EnvelopeRegime::kSkewedUpper: {
      const double beta = params.beta;
      if (below) return std::pow(n, 2.0 - beta);
      if (at) return std::pow(n, (2.0 - beta - params.gamma) / beta);
      return regime == EnvelopeRegime::kSkewedUpper ? 1.0 : 0.0;
    }
  }
  throw InvalidArgument("unknown envelope regime");
}

}  // namespace cachepool
