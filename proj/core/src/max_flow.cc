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

#include "max_flow.h"

#include <algorithm>
#include <limits>
#include <queue>

#include "cachepool/errors.h"

namespace cachepool::internal {

MaxFlow::MaxFlow(int num_nodes)
    : adjacency_(static_cast<size_t>(num_nodes)),
      level_(static_cast<size_t>(num_nodes)),
      next_arc_(static_cast<size_t>(num_nodes)) {}

int MaxFlow::AddEdge(int from, int to, int64_t capacity) {
  const int e = static_cast<int>(arcs_.size());
  arcs_.push_back({to, capacity});
  arcs_.push_back({from, 0});
  adjacency_[from].push_back(e);
  adjacency_[to].push_back(e + 1);
  capacity_.push_back(capacity);
  return e;
}

void MaxFlow::SetFlow(int edge, int64_t flow) {
  const int64_t cap = capacity_[edge / 2];
  if (flow < 0 || flow > cap) {
    throw InternalError("initial flow exceeds arc capacity");
  }
  arcs_[edge].residual = cap - flow;
  arcs_[edge ^ 1].residual = flow;
}

int64_t MaxFlow::flow(int edge) const { return arcs_[edge ^ 1].residual; }

bool MaxFlow::BuildLevels(int source, int sink) {
  std::fill(level_.begin(), level_.end(), -1);
  std::queue<int> frontier;
  level_[source] = 0;
  frontier.push(source);
  while (!frontier.empty()) {
    const int u = frontier.front();
    frontier.pop();
    for (int e : adjacency_[u]) {
      const Arc& arc = arcs_[e];
      if (arc.residual > 0 && level_[arc.to] < 0) {
        level_[arc.to] = level_[u] + 1;
        frontier.push(arc.to);
      }
    }
  }
  return level_[sink] >= 0;
}

int64_t MaxFlow::Push(int node, int sink, int64_t limit) {
  if (node == sink) return limit;
  for (size_t& i = next_arc_[node]; i < adjacency_[node].size(); ++i) {
    const int e = adjacency_[node][i];
    Arc& arc = arcs_[e];
    if (arc.residual <= 0 || level_[arc.to] != level_[node] + 1) continue;
    const int64_t pushed =
        Push(arc.to, sink, std::min(limit, arc.residual));
    if (pushed > 0) {
      arc.residual -= pushed;
      arcs_[e ^ 1].residual += pushed;
      return pushed;
    }
  }
  return 0;
}

int64_t MaxFlow::Solve(int source, int sink) {
  int64_t total = 0;
  while (BuildLevels(source, sink)) {
    std::fill(next_arc_.begin(), next_arc_.end(), size_t{0});
    while (const int64_t pushed =
               Push(source, sink, std::numeric_limits<int64_t>::max())) {
      total += pushed;
    }
  }
  return total;
}

}  // namespace cachepool::internal
