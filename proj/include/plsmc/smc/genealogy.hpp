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

#ifndef PLSMC_SMC_GENEALOGY_HPP
#define PLSMC_SMC_GENEALOGY_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "plsmc/smc/resample.hpp"

namespace plsmc::smc {

/// Full record of every resampling event: for event e, ancestors[j] is the index,
/// in the population before the event, of the particle that offspring j copies.
class Genealogy {
 public:
  struct Event {
    /// Filter step (1-based) during which the event happened.
    std::size_t time;
    std::vector<AncestorIndex> ancestors;
  };

  explicit Genealogy(std::size_t particle_count = 0) : particle_count_(particle_count) {}

  std::size_t particle_count() const { return particle_count_; }
  /// Latest time the owning population has reached.
  std::size_t horizon() const { return horizon_; }
  void advance_to(std::size_t time) { horizon_ = time > horizon_ ? time : horizon_; }
  std::size_t size() const { return events_.size(); }
  bool empty() const { return events_.empty(); }
  const std::vector<Event>& events() const { return events_; }

  /// Throws ValidationError if the vector length is not N, an index is out of range,
  /// or `time` precedes the previous event.
  void append(std::size_t time, std::span<const AncestorIndex> ancestors);

 private:
  std::size_t particle_count_;
  std::size_t horizon_ = 0;
  std::vector<Event> events_;
};

}  // namespace plsmc::smc

#endif  // PLSMC_SMC_GENEALOGY_HPP
