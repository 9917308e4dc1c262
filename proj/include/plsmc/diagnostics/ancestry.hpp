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

#ifndef PLSMC_DIAGNOSTICS_ANCESTRY_HPP
#define PLSMC_DIAGNOSTICS_ANCESTRY_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "plsmc/smc/genealogy.hpp"

namespace plsmc::diagnostics {

/// For each particle of the time-t population, the index of its ancestor in the
/// time-s population. The time-u population is the one present at the end of
/// step u, so only resampling events with s < time <= t are composed.
///
/// Throws IndexError unless 1 <= s <= t <= genealogy.horizon().
std::vector<smc::AncestorIndex> compose_ancestors(const smc::Genealogy& genealogy, std::size_t t,
                                                  std::size_t s);

/// Number of distinct time-s ancestors of the time-t population.
std::size_t distinct_ancestors(const smc::Genealogy& genealogy, std::size_t t, std::size_t s);

/// Number of distinct entries in an index vector whose values lie in [0, N).
std::size_t distinct_indices(std::span<const smc::AncestorIndex> indices, std::size_t N);

/// Incremental form of distinct_ancestors(genealogy, t, reference_time) as t grows:
/// O(N) per resampling event instead of recomposing the whole chain.
class CoalescenceTracker {
 public:
  CoalescenceTracker(std::size_t N, std::size_t reference_time);

  /// Feed every resampling event in order.
  void record(std::size_t time, std::span<const smc::AncestorIndex> ancestors);

  std::size_t distinct() const { return distinct_; }
  std::span<const smc::AncestorIndex> origins() const { return origin_; }

 private:
  std::size_t reference_time_;
  std::vector<smc::AncestorIndex> origin_;
  std::vector<smc::AncestorIndex> next_;
  std::size_t distinct_;
};

}  // namespace plsmc::diagnostics

#endif  // PLSMC_DIAGNOSTICS_ANCESTRY_HPP
