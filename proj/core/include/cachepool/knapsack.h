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

#ifndef CACHEPOOL_KNAPSACK_H_
#define CACHEPOOL_KNAPSACK_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace cachepool {

struct KnapsackItem {
  int64_t id = 0;
  double value = 0.0;   // >= 0
  double weight = 1.0;  // > 0
};

struct KnapsackSolution {
  // fractions[j] is the selected fraction of items[j], in [0, 1].
  std::vector<double> fractions;
  double objective = 0.0;
  // Id of the single partially selected item, if any.
  std::optional<int64_t> cut_index;
};

// Solves the fractional (LP-relaxed) knapsack
//
//   max sum_j x_j v_j   s.t.  sum_j x_j w_j <= capacity,  0 <= x_j <= 1
//
// greedily: items are taken whole in nonincreasing order of v/w until the
// next one no longer fits, which is then taken fractionally. Ratio ties go
// to the smaller id. An item fits when its weight is within a relative
// tolerance of 1e-9 * capacity of the remaining room. O(J log J).
//
// Throws InvalidArgument on negative or non-finite capacity, negative value,
// or nonpositive weight.
KnapsackSolution SolveFractional(std::span<const KnapsackItem> items,
                                 double capacity);

}  // namespace cachepool

#endif  // CACHEPOOL_KNAPSACK_H_
