// Copyright 2026 The plsmc Authors
//
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

#ifndef PLSMC_HARNESS_SEED_HPP
#define PLSMC_HARNESS_SEED_HPP

#include <cstdint>

namespace plsmc::harness {

/// SplitMix64 output finalizer (Stafford variant 13): a bijection on 64-bit words.
constexpr std::uint64_t splitmix64_mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Seed of replication `index` under `master_seed`:
///
///   splitmix64_mix(master_seed + (index + 1) * 0x9e3779b97f4a7c15)
///
/// For a fixed master seed the map index -> seed is injective over all 2^64
/// indices (odd multiplier, bijective mixer), and for a fixed index distinct master
/// seeds give distinct outputs.
constexpr std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index) {
  return splitmix64_mix(master_seed + (index + 1) * 0x9e3779b97f4a7c15ULL);
}

}  // namespace plsmc::harness

#endif  // PLSMC_HARNESS_SEED_HPP
