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

#ifndef CACHEPOOL_RANDOM_H_
#define CACHEPOOL_RANDOM_H_

#include <cstdint>
#include <limits>
#include <random>

namespace cachepool {

// All randomness flows through a 64-bit Mersenne Twister. Bounded draws use
// the helpers below rather than std::uniform_*_distribution, whose output
// is not specified across standard library implementations.
using Rng = std::mt19937_64;

// SplitMix64 finalizer.
constexpr uint64_t Mix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Seed of sub-stream `stream` under `parent`:
//   Mix64(parent ^ Mix64(stream))
// Distinct streams of one parent never share a seed in practice, and the
// value does not depend on how work is scheduled.
constexpr uint64_t DeriveSeed(uint64_t parent, uint64_t stream) {
  return Mix64(parent ^ Mix64(stream));
}

// Uniform integer in [0, n). n must be positive.
inline uint64_t UniformIndex(Rng& rng, uint64_t n) {
  const uint64_t limit =
      std::numeric_limits<uint64_t>::max() -
      std::numeric_limits<uint64_t>::max() % n;
  uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

// Uniform double in [0, 1) with 53 random bits.
inline double UniformUnit(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace cachepool

#endif  // CACHEPOOL_RANDOM_H_
