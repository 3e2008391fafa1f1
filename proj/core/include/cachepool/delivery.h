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

#ifndef CACHEPOOL_DELIVERY_H_
#define CACHEPOOL_DELIVERY_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cachepool/placement.h"
#include "cachepool/popularity.h"

namespace cachepool {

// One part of one request. request_id is 1-based within the batch.
struct SubRequest {
  int32_t request_id = 1;
  SubFileId target;
};

// Expands each request into its a parts, ordered by (request_id, part).
std::vector<SubRequest> SplitRequests(const RequestBatch& batch, int a);

inline constexpr int32_t kServer = -1;

// assignment[s] is the cache serving subrequests[s], or kServer. Each cache
// has a service slots (a sub-requests of 1/a units = 1 unit of output) and
// only serves sub-files it stores.
using Assignment = std::vector<int32_t>;

// Maximum-cardinality matching of sub-requests to cache slots, computed as
// a max flow from sub-file groups to caches (Dinic). Cold start.
Assignment OmrMatch(const PlacementPlan& plan,
                    std::span<const SubRequest> subrequests);

// Same, but augments from a feasible `warm_start` assignment. Augmenting
// paths never unmatch a matched sub-request, so every sub-file fully served
// by the warm start stays fully served and the result's server rate is at
// most the warm start's. Throws InvalidArgument if warm_start is infeasible.
Assignment OmrMatch(const PlacementPlan& plan,
                    std::span<const SubRequest> subrequests,
                    const Assignment& warm_start);

// Match Least Popular. Walks sub-file indices from a * n down to 1. If the
// requests for a sub-file outnumber the idle slots on caches storing it,
// all of them go to the server; otherwise each takes an idle slot chosen
// uniformly at random.
Assignment MlpMatch(const PlacementPlan& plan,
                    std::span<const SubRequest> subrequests, uint64_t seed);

// Online randomized routing: sub-requests in (request, part) order, each to
// a uniformly random cache that stores its sub-file and has an idle slot.
Assignment OrrMatch(const PlacementPlan& plan,
                    std::span<const SubRequest> subrequests, uint64_t seed);

// Online least-loaded routing: as OrrMatch, but picks among the eligible
// caches with the fewest busy slots, breaking ties uniformly at random.
Assignment OllrMatch(const PlacementPlan& plan,
                     std::span<const SubRequest> subrequests, uint64_t seed);

enum class DeliveryPolicy { kOmr, kMlp, kOrr, kOllr };

std::string_view ToString(DeliveryPolicy policy);
// Accepts "omr", "mlp", "orr", "ollr" (any case).
DeliveryPolicy ParseDeliveryPolicy(std::string_view name);

// Runs one policy. kOmr runs MLP, ORR and OLLR with the same seed, takes
// whichever has the lowest server rate as the warm start, and augments it to
// a maximum matching, so its rate never exceeds any of theirs on the same
// (plan, sub-requests, seed).
Assignment Deliver(DeliveryPolicy policy, const PlacementPlan& plan,
                   std::span<const SubRequest> subrequests, uint64_t seed);

struct DeliveryOutcome {
  Assignment assignment;
  // Distinct sub-files the server sends, sorted. Each goes out once per
  // slot however many users asked for it.
  std::vector<SubFileId> server_subfiles;
  // |server_subfiles| / a, in file units.
  double rate = 0.0;
};

// Verifies the assignment against the plan (slot limits, stored targets,
// one entry per sub-request) and computes the deduplicated server rate.
// Throws InternalError on any violation.
DeliveryOutcome Finalize(const PlacementPlan& plan,
                         std::span<const SubRequest> subrequests,
                         Assignment assignment);

// Server rate of an assignment without the consistency checks.
double ServerRate(const PlacementPlan& plan,
                  std::span<const SubRequest> subrequests,
                  const Assignment& assignment);

}  // namespace cachepool

#endif  // CACHEPOOL_DELIVERY_H_
