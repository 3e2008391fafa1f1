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

#include "cachepool/delivery.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <string>
#include <utility>

#include "cachepool/errors.h"
#include "cachepool/random.h"
#include "max_flow.h"

namespace cachepool {
namespace {

// Sub-requests bucketed by target sub-file, buckets in increasing linear
// index, members in sub-request order.
struct SubFileGroups {
  std::vector<int64_t> linear_index;
  std::vector<std::vector<int32_t>> members;
};

SubFileGroups GroupBySubFile(const PlacementPlan& plan,
                             std::span<const SubRequest> subrequests) {
  const int a = plan.a();
  std::vector<std::pair<int64_t, int32_t>> keyed;
  keyed.reserve(subrequests.size());
  for (size_t s = 0; s < subrequests.size(); ++s) {
    const SubFileId t = subrequests[s].target;
    if (t.content < 1 || t.content > plan.n() || t.part < 1 || t.part > a) {
      throw InvalidArgument("sub-request targets a sub-file outside the plan");
    }
    keyed.emplace_back(LinearIndex(t, a), static_cast<int32_t>(s));
  }
  std::sort(keyed.begin(), keyed.end());
  SubFileGroups groups;
  for (const auto& [index, s] : keyed) {
    if (groups.linear_index.empty() || groups.linear_index.back() != index) {
      groups.linear_index.push_back(index);
      groups.members.emplace_back();
    }
    groups.members.back().push_back(s);
  }
  return groups;
}

// Shared by the two online policies; `least_loaded` selects OLLR.
Assignment RouteOnline(const PlacementPlan& plan,
                       std::span<const SubRequest> subrequests, uint64_t seed,
                       bool least_loaded) {
  const int a = plan.a();
  Rng rng(seed);
  std::vector<int32_t> busy(static_cast<size_t>(plan.m()), 0);
  std::vector<int32_t> candidates;
  Assignment assignment(subrequests.size(), kServer);
  for (size_t s = 0; s < subrequests.size(); ++s) {
    candidates.clear();
    int32_t best_load = a;
    for (int32_t c : plan.holders(subrequests[s].target)) {
      if (busy[c] >= a) continue;
      if (least_loaded) {
        if (busy[c] < best_load) {
          best_load = busy[c];
          candidates.clear();
        } else if (busy[c] > best_load) {
          continue;
        }
      }
      candidates.push_back(c);
    }
    if (candidates.empty()) continue;
    const int32_t chosen = candidates[UniformIndex(rng, candidates.size())];
    assignment[s] = chosen;
    ++busy[chosen];
  }
  return assignment;
}

}  // namespace

std::vector<SubRequest> SplitRequests(const RequestBatch& batch, int a) {
  if (a < 1) throw InvalidArgument("a must be >= 1");
  std::vector<SubRequest> out;
  out.reserve(batch.requests.size() * static_cast<size_t>(a));
  for (size_t i = 0; i < batch.requests.size(); ++i) {
    for (int32_t part = 1; part <= a; ++part) {
      out.push_back(SubRequest{static_cast<int32_t>(i + 1),
                               SubFileId{batch.requests[i], part}});
    }
  }
  return out;
}

Assignment OmrMatch(const PlacementPlan& plan,
                    std::span<const SubRequest> subrequests) {
  return OmrMatch(plan, subrequests,
                  Assignment(subrequests.size(), kServer));
}

Assignment OmrMatch(const PlacementPlan& plan,
                    std::span<const SubRequest> subrequests,
                    const Assignment& warm_start) {
  if (warm_start.size() != subrequests.size()) {
    throw InvalidArgument("warm start must cover every sub-request");
  }
  const SubFileGroups groups = GroupBySubFile(plan, subrequests);
  const int num_groups = static_cast<int>(groups.linear_index.size());
  const int m = plan.m();
  const int source = 0;
  const int sink = 1;
  const int first_group = 2;
  const int first_cache = first_group + num_groups;
  internal::MaxFlow flow(first_cache + m);

  std::vector<int> cache_edge(static_cast<size_t>(m));
  for (int c = 0; c < m; ++c) {
    cache_edge[c] = flow.AddEdge(first_cache + c, sink, plan.a());
  }
  std::vector<int64_t> cache_load(static_cast<size_t>(m), 0);
  // Per group: (cache, edge handle) for every holder of the sub-file.
  std::vector<std::vector<std::pair<int32_t, int>>> group_edges(
      static_cast<size_t>(num_groups));
  std::vector<int> source_edge(static_cast<size_t>(num_groups));
  for (int g = 0; g < num_groups; ++g) {
    const auto& members = groups.members[g];
    const int64_t demand = static_cast<int64_t>(members.size());
    source_edge[g] = flow.AddEdge(source, first_group + g, demand);
    for (int32_t c : plan.holders(groups.linear_index[g])) {
      group_edges[g].emplace_back(
          c, flow.AddEdge(first_group + g, first_cache + c, demand));
    }
    // Load the warm start.
    int64_t served = 0;
    for (auto& [c, edge] : group_edges[g]) {
      int64_t on_edge = 0;
      for (int32_t s : members) on_edge += warm_start[s] == c ? 1 : 0;
      if (on_edge > 0) flow.SetFlow(edge, on_edge);
      served += on_edge;
      cache_load[c] += on_edge;
    }
    int64_t assigned = 0;
    for (int32_t s : members) assigned += warm_start[s] != kServer ? 1 : 0;
    if (assigned != served) {
      throw InvalidArgument(
          "warm start sends a sub-request to a cache that lacks its sub-file");
    }
    flow.SetFlow(source_edge[g], served);
  }
  for (int c = 0; c < m; ++c) {
    if (cache_load[c] > plan.a()) {
      throw InvalidArgument("warm start overloads cache " +
                            std::to_string(c + 1));
    }
    flow.SetFlow(cache_edge[c], cache_load[c]);
  }

  flow.Solve(source, sink);

  // Decompose: members keep their warm-start cache while that edge still
  // carries flow; the rest fill the remaining flow in order.
  Assignment assignment(subrequests.size(), kServer);
  for (int g = 0; g < num_groups; ++g) {
    std::vector<std::pair<int32_t, int64_t>> remaining;
    for (const auto& [c, edge] : group_edges[g]) {
      remaining.emplace_back(c, flow.flow(edge));
    }
    std::vector<int32_t> unplaced;
    for (int32_t s : groups.members[g]) {
      bool kept = false;
      if (warm_start[s] != kServer) {
        for (auto& [c, left] : remaining) {
          if (c == warm_start[s] && left > 0) {
            assignment[s] = c;
            --left;
            kept = true;
            break;
          }
        }
      }
      if (!kept) unplaced.push_back(s);
    }
    size_t next = 0;
    for (auto& [c, left] : remaining) {
      for (; left > 0 && next < unplaced.size(); --left) {
        assignment[unplaced[next++]] = c;
      }
    }
  }
  return assignment;
}

Assignment MlpMatch(const PlacementPlan& plan,
                    std::span<const SubRequest> subrequests, uint64_t seed) {
  const int a = plan.a();
  const SubFileGroups groups = GroupBySubFile(plan, subrequests);
  Rng rng(seed);
  std::vector<int32_t> busy(static_cast<size_t>(plan.m()), 0);
  std::vector<int32_t> idle_slots;
  Assignment assignment(subrequests.size(), kServer);
  // Least popular first: largest linear index down to the smallest.
  for (size_t g = groups.linear_index.size(); g-- > 0;) {
    const auto& members = groups.members[g];
    idle_slots.clear();
    for (int32_t c : plan.holders(groups.linear_index[g])) {
      for (int32_t slot = busy[c]; slot < a; ++slot) idle_slots.push_back(c);
    }
    if (members.size() > idle_slots.size()) continue;  // all to the server
    // Partial Fisher-Yates: the first |members| slots are a uniform sample.
    for (size_t j = 0; j < members.size(); ++j) {
      const size_t pick = j + UniformIndex(rng, idle_slots.size() - j);
      std::swap(idle_slots[j], idle_slots[pick]);
      assignment[members[j]] = idle_slots[j];
      ++busy[idle_slots[j]];
    }
  }
  return assignment;
}

Assignment OrrMatch(const PlacementPlan& plan,
                    std::span<const SubRequest> subrequests, uint64_t seed) {
  return RouteOnline(plan, subrequests, seed, /*least_loaded=*/false);
}

Assignment OllrMatch(const PlacementPlan& plan,
                     std::span<const SubRequest> subrequests, uint64_t seed) {
  return RouteOnline(plan, subrequests, seed, /*least_loaded=*/true);
}

std::string_view ToString(DeliveryPolicy policy) {
  switch (policy) {
    case DeliveryPolicy::kOmr: return "omr";
    case DeliveryPolicy::kMlp: return "mlp";
    case DeliveryPolicy::kOrr: return "orr";
    case DeliveryPolicy::kOllr: return "ollr";
  }
  return "?";
}

DeliveryPolicy ParseDeliveryPolicy(std::string_view name) {
  std::string lower(name);
  for (char& ch : lower) {
    ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  }
  for (DeliveryPolicy p : {DeliveryPolicy::kOmr, DeliveryPolicy::kMlp,
                           DeliveryPolicy::kOrr, DeliveryPolicy::kOllr}) {
    if (lower == ToString(p)) return p;
  }
  throw InvalidArgument("unknown delivery policy '" + std::string(name) + "'");
}

Assignment Deliver(DeliveryPolicy policy, const PlacementPlan& plan,
                   std::span<const SubRequest> subrequests, uint64_t seed) {
  switch (policy) {
    case DeliveryPolicy::kMlp: return MlpMatch(plan, subrequests, seed);
    case DeliveryPolicy::kOrr: return OrrMatch(plan, subrequests, seed);
    case DeliveryPolicy::kOllr: return OllrMatch(plan, subrequests, seed);
    case DeliveryPolicy::kOmr: break;
  }
  std::array<Assignment, 3> starts = {MlpMatch(plan, subrequests, seed),
                                      OrrMatch(plan, subrequests, seed),
                                      OllrMatch(plan, subrequests, seed)};
  size_t best = 0;
  double best_rate = ServerRate(plan, subrequests, starts[0]);
  for (size_t i = 1; i < starts.size(); ++i) {
    const double rate = ServerRate(plan, subrequests, starts[i]);
    if (rate < best_rate) {
      best = i;
      best_rate = rate;
    }
  }
  return OmrMatch(plan, subrequests, starts[best]);
}

double ServerRate(const PlacementPlan& plan,
                  std::span<const SubRequest> subrequests,
                  const Assignment& assignment) {
  std::vector<int64_t> sent;
  for (size_t s = 0; s < subrequests.size(); ++s) {
    if (assignment[s] == kServer) {
      sent.push_back(LinearIndex(subrequests[s].target, plan.a()));
    }
  }
  std::sort(sent.begin(), sent.end());
  const auto distinct = std::unique(sent.begin(), sent.end()) - sent.begin();
  return static_cast<double>(distinct) / plan.a();
}

DeliveryOutcome Finalize(const PlacementPlan& plan,
                         std::span<const SubRequest> subrequests,
                         Assignment assignment) {
  if (assignment.size() != subrequests.size()) {
    throw InternalError("assignment does not cover every sub-request");
  }
  std::vector<int64_t> served(static_cast<size_t>(plan.m()), 0);
  DeliveryOutcome outcome;
  for (size_t s = 0; s < subrequests.size(); ++s) {
    const SubFileId target = subrequests[s].target;
    if (target.content < 1 || target.content > plan.n() || target.part < 1 ||
        target.part > plan.a()) {
      throw InternalError("sub-request targets a sub-file outside the plan");
    }
    const int32_t c = assignment[s];
    if (c == kServer) {
      outcome.server_subfiles.push_back(target);
      continue;
    }
    if (c < 0 || c >= plan.m()) {
      throw InternalError("assignment names a nonexistent cache");
    }
    if (!plan.Contains(c, target)) {
      throw InternalError("cache " + std::to_string(c + 1) +
                          " assigned a sub-file it does not store");
    }
    if (++served[c] > plan.a()) {
      throw InternalError("cache " + std::to_string(c + 1) +
                          " assigned more than a sub-requests");
    }
  }
  std::sort(outcome.server_subfiles.begin(), outcome.server_subfiles.end());
  outcome.server_subfiles.erase(
      std::unique(outcome.server_subfiles.begin(),
                  outcome.server_subfiles.end()),
      outcome.server_subfiles.end());
  outcome.rate =
      static_cast<double>(outcome.server_subfiles.size()) / plan.a();
  outcome.assignment = std::move(assignment);
  return outcome;
}

}  // namespace cachepool
