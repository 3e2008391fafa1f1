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

#ifndef CACHEPOOL_MAX_FLOW_H_
#define CACHEPOOL_MAX_FLOW_H_

#include <cstdint>
#include <vector>

namespace cachepool::internal {

// Dinic's algorithm on a small directed graph. An initial feasible flow may
// be loaded with SetFlow() before Solve(); Solve() then only augments.
class MaxFlow {
 public:
  explicit MaxFlow(int num_nodes);

  // Returns an edge handle for SetFlow()/flow().
  int AddEdge(int from, int to, int64_t capacity);

  void SetFlow(int edge, int64_t flow);
  int64_t flow(int edge) const;

  // Pushes as much additional flow from source to sink as possible and
  // returns the amount pushed.
  int64_t Solve(int source, int sink);

 private:
  struct Arc {
    int to;
    int64_t residual;
  };

  bool BuildLevels(int source, int sink);
  int64_t Push(int node, int sink, int64_t limit);

  std::vector<Arc> arcs_;  // arc e and its reverse e ^ 1
  std::vector<int64_t> capacity_;  // per forward arc handle
  std::vector<std::vector<int>> adjacency_;
  std::vector<int> level_;
  std::vector<size_t> next_arc_;
};

}  // namespace cachepool::internal

#endif  // CACHEPOOL_MAX_FLOW_H_
