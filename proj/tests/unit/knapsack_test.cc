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

#include "cachepool/knapsack.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "cachepool/errors.h"
#include "gtest/gtest.h"
#include "oracles.h"

namespace cachepool {
namespace {

std::vector<KnapsackItem> Items(const std::vector<double>& v,
                                const std::vector<double>& w) {
  std::vector<KnapsackItem> items;
  for (size_t j = 0; j < v.size(); ++j) {
    items.push_back({static_cast<int64_t>(j + 1), v[j], w[j]});
  }
  return items;
}

TEST(SolveFractionalTest, LooseCapacityTakesEverything) {
  auto items = Items({1, 5, 0, 2}, {3, 1, 2, 0.5});
  auto sol = SolveFractional(items, 6.5);
  for (double x : sol.fractions) EXPECT_EQ(x, 1.0);
  EXPECT_DOUBLE_EQ(sol.objective, 8.0);
  EXPECT_FALSE(sol.cut_index.has_value());
}

TEST(SolveFractionalTest, EqualWeights) {
  auto items = Items({3, 2, 1}, {1, 1, 1});
  auto sol = SolveFractional(items, 2.5);
  EXPECT_EQ(sol.fractions, (std::vector<double>{1, 1, 0.5}));
  EXPECT_DOUBLE_EQ(sol.objective, 5.5);
  EXPECT_EQ(sol.cut_index, 3);
}

TEST(SolveFractionalTest, RatioOrder) {
  auto items = Items({6, 10, 12}, {1, 2, 3});
  auto sol = SolveFractional(items, 5);
  EXPECT_DOUBLE_EQ(sol.fractions[0], 1.0);
  EXPECT_DOUBLE_EQ(sol.fractions[1], 1.0);
  EXPECT_NEAR(sol.fractions[2], 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(sol.objective, 24.0, 1e-12);
}

TEST(SolveFractionalTest, ZeroCapacity) {
  auto sol = SolveFractional(Items({1, 2}, {1, 1}), 0.0);
  EXPECT_EQ(sol.objective, 0.0);
  EXPECT_EQ(sol.fractions, (std::vector<double>{0, 0}));
}

TEST(SolveFractionalTest, TiesGoToSmallerId) {
  std::vector<KnapsackItem> items = {{7, 2, 2}, {3, 1, 1}};
  auto sol = SolveFractional(items, 1.0);
  EXPECT_EQ(sol.fractions[1], 1.0);
  EXPECT_EQ(sol.fractions[0], 0.0);
}

TEST(SolveFractionalTest, RejectsBadInput) {
  EXPECT_THROW(SolveFractional(Items({1}, {1}), -1), InvalidArgument);
  EXPECT_THROW(SolveFractional(Items({1}, {1}), NAN), InvalidArgument);
  EXPECT_THROW(SolveFractional(Items({1}, {0}), 1), InvalidArgument);
  EXPECT_THROW(SolveFractional(Items({1}, {-2}), 1), InvalidArgument);
  EXPECT_THROW(SolveFractional(Items({-1}, {1}), 1), InvalidArgument);
}

class RandomKnapsackTest : public ::testing::Test {
 protected:
  std::mt19937_64 gen_{17};

  std::vector<KnapsackItem> Draw(int j, std::vector<double>* v,
                                 std::vector<double>* w) {
    std::uniform_real_distribution<double> val(0.0, 10.0), wt(0.1, 5.0);
    v->clear();
    w->clear();
    for (int i = 0; i < j; ++i) {
      v->push_back(val(gen_));
      w->push_back(wt(gen_));
    }
    return Items(*v, *w);
  }
};

TEST_F(RandomKnapsackTest, MatchesEnumeration) {
  std::uniform_int_distribution<int> size(1, 6);
  std::uniform_real_distribution<double> frac(0.0, 1.1);
  for (int t = 0; t < 300; ++t) {
    std::vector<double> v, w;
    auto items = Draw(size(gen_), &v, &w);
    double total = 0;
    for (double x : w) total += x;
    double cap = frac(gen_) * total;
    auto sol = SolveFractional(items, cap);
    EXPECT_NEAR(sol.objective, oracle::KnapsackLp(v, w, cap), 1e-9);
  }
}

TEST_F(RandomKnapsackTest, PrefixStructure) {
  for (int t = 0; t < 200; ++t) {
    std::vector<double> v, w;
    auto items = Draw(8, &v, &w);
    auto sol = SolveFractional(items, 8.0);
    std::vector<size_t> order(items.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t x, size_t y) {
      return v[x] / w[x] > v[y] / w[y];
    });
    int fractional = 0;
    double used = 0;
    for (size_t i = 0; i < order.size(); ++i) {
      double x = sol.fractions[order[i]];
      used += x * w[order[i]];
      if (x > 0 && x < 1) ++fractional;
      if (i > 0) EXPECT_LE(x, sol.fractions[order[i - 1]]);
    }
    EXPECT_LE(fractional, 1);
    EXPECT_LE(used, 8.0 * (1 + 1e-9));
  }
}

TEST_F(RandomKnapsackTest, ObjectiveGrowsWithCapacity) {
  for (int t = 0; t < 50; ++t) {
    std::vector<double> v, w;
    auto items = Draw(6, &v, &w);
    double last = -1;
    for (double cap = 0; cap <= 20; cap += 0.5) {
      double obj = SolveFractional(items, cap).objective;
      EXPECT_GE(obj, last - 1e-12);
      last = obj;
    }
  }
}

}  // namespace
}  // namespace cachepool
