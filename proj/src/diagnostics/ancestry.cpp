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

#include "plsmc/diagnostics/ancestry.hpp"

#include <numeric>
#include <string>

#include "plsmc/error.hpp"

namespace plsmc::diagnostics {

std::vector<smc::AncestorIndex> compose_ancestors(const smc::Genealogy& genealogy, std::size_t t,
                                                  std::size_t s) {
  if (s == 0 || s > t || t > genealogy.horizon()) {
    throw IndexError("distinct_ancestors: need 1 <= s <= t <= " + std::to_string(genealogy.horizon()) +
                     ", got s=" + std::to_string(s) + ", t=" + std::to_string(t));
  }
  std::vector<smc::AncestorIndex> lineage(genealogy.particle_count());
  std::iota(lineage.begin(), lineage.end(), smc::AncestorIndex{0});
  const auto& events = genealogy.events();
  for (auto it = events.rbegin(); it != events.rend(); ++it) {
    if (it->time > t) {
      continue;
    }
    if (it->time <= s) {
      break;
    }
    for (auto& index : lineage) {
      index = it->ancestors[index];
    }
  }
  return lineage;
}

std::size_t distinct_indices(std::span<const smc::AncestorIndex> indices, std::size_t N) {
  std::vector<bool> seen(N, false);
  std::size_t count = 0;
  for (auto index : indices) {
    if (!seen[index]) {
      seen[index] = true;
      ++count;
    }
  }
  return count;
}

std::size_t distinct_ancestors(const smc::Genealogy& genealogy, std::size_t t, std::size_t s) {
  return distinct_indices(compose_ancestors(genealogy, t, s), genealogy.particle_count());
}

CoalescenceTracker::CoalescenceTracker(std::size_t N, std::size_t reference_time)
    : reference_time_(reference_time), origin_(N), next_(N), distinct_(N) {
  std::iota(origin_.begin(), origin_.end(), smc::AncestorIndex{0});
}

void CoalescenceTracker::record(std::size_t time, std::span<const smc::AncestorIndex> ancestors) {
  if (time <= reference_time_) {
    return;
  }
  for (std::size_t j = 0; j < origin_.size(); ++j) {
    next_[j] = origin_[ancestors[j]];
  }
  origin_.swap(next_);
  distinct_ = distinct_indices(origin_, origin_.size());
}

}  // namespace plsmc::diagnostics
