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
#include <numeric>

#include "cachepool/errors.h"

namespace cachepool {

KnapsackSolution SolveFractional(std::span<const KnapsackItem> items,
                                 double capacity) {
  if (!std::isfinite(capacity) || capacity < 0.0) {
    throw InvalidArgument("knapsack capacity must be finite and >= 0");
  }
  for (const KnapsackItem& item : items) {
    if (!std::isfinite(item.value) || item.value < 0.0) {
      throw InvalidArgument("knapsack item values must be finite and >= 0");
    }
    if (!std::isfinite(item.weight) || item.weight <= 0.0) {
      throw InvalidArgument("knapsack item weights must be finite and > 0");
    }
  }

  std::vector<size_t> order(items.size());
  std::iota(order.begin(), order.end(), size_t{0});
  // Compare v_i / w_i > v_j / w_j as v_i w_j > v_j w_i to avoid dividing.
  std::sort(order.begin(), order.end(), [&](size_t i, size_t j) {
    const double lhs = items[i].value * items[j].weight;
    const double rhs = items[j].value * items[i].weight;
    if (lhs != rhs) return lhs > rhs;
    return items[i].id < items[j].id;
  });

  KnapsackSolution solution;
  solution.fractions.assign(items.size(), 0.0);
  const double slack = 1e-9 * capacity;
  double room = capacity;
  for (size_t j : order) {
    const KnapsackItem& item = items[j];
    if (item.weight <= room + slack) {
      solution.fractions[j] = 1.0;
      solution.objective += item.value;
      room = std::max(0.0, room - item.weight);
      continue;
    }
    if (room > 0.0) {
      const double x = room / item.weight;
      solution.fractions[j] = x;
      solution.objective += x * item.value;
      solution.cut_index = item.id;
    }
    break;
  }
  return solution;
}

}  // namespace cachepool
