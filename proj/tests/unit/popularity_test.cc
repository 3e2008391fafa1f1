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

#include <cmath>
#include <cstdint>
#include <vector>

#include "cachepool/errors.h"
#include "gtest/gtest.h"
#include "oracles.h"

namespace cachepool {
namespace {

TEST(ZipfProfileTest, SingleFile) {
  auto p = ZipfProfile(1, 2.0);
  ASSERT_EQ(p.n(), 1);
  EXPECT_DOUBLE_EQ(p.p(1), 1.0);
}

TEST(ZipfProfileTest, UniformAtBetaZero) {
  auto p = ZipfProfile(3, 0.0);
  for (int i = 1; i <= 3; ++i) EXPECT_DOUBLE_EQ(p.p(i), 1.0 / 3.0);
}

TEST(ZipfProfileTest, HarmonicFour) {
  auto p = ZipfProfile(4, 1.0);
  const double want[] = {0.48, 0.24, 0.16, 0.12};
  for (int i = 1; i <= 4; ++i) EXPECT_NEAR(p.p(i), want[i - 1], 1e-15);
}

TEST(ZipfProfileTest, MatchesDirectSummation) {
  for (double beta : {0.0, 0.3, 0.9, 1.0, 1.4, 2.5}) {
    for (int64_t n : {1, 2, 17, 1000, 20000}) {
      auto p = ZipfProfile(n, beta);
      auto want = oracle::Zipf(n, beta);
      long double sum = 0.0L;
      for (int64_t i = 1; i <= n; ++i) {
        EXPECT_NEAR(p.p(i), want[i - 1], 1e-14 * want[i - 1] + 1e-300);
        sum += p.p(i);
        if (i > 1) EXPECT_LE(p.p(i), p.p(i - 1));
        EXPECT_GT(p.p(i), 0.0);
      }
      EXPECT_NEAR(static_cast<double>(sum), 1.0, 1e-12);
    }
  }
}

TEST(ZipfProfileTest, RejectsBadInput) {
  EXPECT_THROW(ZipfProfile(0, 1.0), InvalidArgument);
  EXPECT_THROW(ZipfProfile(5, -0.1), InvalidArgument);
  EXPECT_THROW(ZipfProfile(5, NAN), InvalidArgument);
  EXPECT_THROW(ZipfProfile(5, INFINITY), InvalidArgument);
}

TEST(FromProbabilitiesTest, Validates) {
  EXPECT_THROW(PopularityProfile::FromProbabilities({0.5, 0.6}, NAN),
               InvalidArgument);
  EXPECT_THROW(PopularityProfile::FromProbabilities({1.2, -0.2}, NAN),
               InvalidArgument);
  auto p = PopularityProfile::FromProbabilities({0.25, 0.75}, NAN);
  EXPECT_DOUBLE_EQ(p.p(2), 0.75);
}

TEST(SampleBatchTest, DegenerateProfile) {
  auto p = ZipfProfile(1, 1.0);
  for (uint64_t seed : {0ull, 7ull, 123456789ull}) {
    EXPECT_EQ(SampleBatch(p, 3, seed).requests,
              (std::vector<int32_t>{1, 1, 1}));
  }
}

TEST(SampleBatchTest, SameSeedSameBatch) {
  auto p = ZipfProfile(500, 0.8);
  auto a = SampleBatch(p, 1000, 99);
  auto b = SampleBatch(p, 1000, 99);
  EXPECT_EQ(a.requests, b.requests);
  EXPECT_EQ(a.slot_seed, b.slot_seed);
  EXPECT_NE(a.requests, SampleBatch(p, 1000, 100).requests);
}

TEST(SampleBatchTest, LengthAndRange) {
  auto p = ZipfProfile(37, 1.3);
  for (uint64_t seed = 0; seed < 50; ++seed) {
    auto batch = SampleBatch(p, 1 + seed * 3, seed);
    ASSERT_EQ(batch.requests.size(), 1 + seed * 3);
    for (int32_t x : batch.requests) {
      EXPECT_GE(x, 1);
      EXPECT_LE(x, 37);
    }
  }
}

TEST(SampleBatchTest, RejectsEmptyBatch) {
  EXPECT_THROW(SampleBatch(ZipfProfile(3, 1.0), 0, 1), InvalidArgument);
}

TEST(SampleBatchTest, EmpiricalFrequencies) {
  auto p = ZipfProfile(4, 1.0);
  const int64_t r = 100000;
  auto counts = RequestCounts(SampleBatch(p, r, 2024), 4);
  // 4 sigma per rank keeps the joint false alarm rate tiny.
  for (int i = 1; i <= 4; ++i) {
    double pi = p.p(i);
    double sigma = std::sqrt(pi * (1 - pi) / r);
    EXPECT_NEAR(double(counts[i - 1]) / r, pi, 4 * sigma) << "rank " << i;
  }
  EXPECT_NEAR(double(counts[0]) / r, 0.48, 3 * std::sqrt(0.48 * 0.52 / r));
}

TEST(RequestCountsTest, Tally) {
  RequestBatch b;
  b.requests = {1, 1, 3};
  EXPECT_EQ(RequestCounts(b, 3), (std::vector<int64_t>{2, 0, 1}));
  b.requests = {4};
  EXPECT_THROW(RequestCounts(b, 3), InvalidArgument);
  b.requests = {0};
  EXPECT_THROW(RequestCounts(b, 3), InvalidArgument);
}

TEST(RequestCountsTest, SumsToBatchSize) {
  auto p = ZipfProfile(60, 0.7);
  for (uint64_t seed = 0; seed < 100; ++seed) {
    int64_t r = 1 + (seed * 37) % 400;
    auto counts = RequestCounts(SampleBatch(p, r, seed), 60);
    int64_t total = 0;
    for (int64_t c : counts) total += c;
    EXPECT_EQ(total, r);
  }
}

TEST(RandomTest, UniformIndexInRange) {
  Rng rng(5);
  for (uint64_t n : {1ull, 2ull, 3ull, 1000ull, (1ull << 63) + 5}) {
    for (int i = 0; i < 200; ++i) EXPECT_LT(UniformIndex(rng, n), n);
  }
  for (int i = 0; i < 1000; ++i) {
    double u = UniformUnit(rng);
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
}

TEST(RandomTest, DerivedSeedsDiffer) {
  EXPECT_NE(DeriveSeed(1, 0), DeriveSeed(1, 1));
  EXPECT_NE(DeriveSeed(1, 0), DeriveSeed(2, 0));
  EXPECT_EQ(DeriveSeed(42, 7), DeriveSeed(42, 7));
}

}  // namespace
}  // namespace cachepool
