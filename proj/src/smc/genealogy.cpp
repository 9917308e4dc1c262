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

#include "plsmc/smc/genealogy.hpp"

#include <string>

#include "plsmc/error.hpp"

namespace plsmc::smc {

void Genealogy::append(std::size_t time, std::span<const AncestorIndex> ancestors) {
  if (ancestors.size() != particle_count_) {
    throw ValidationError("genealogy: ancestor vector has length " + std::to_string(ancestors.size()) +
                          ", expected " + std::to_string(particle_count_));
  }
  if (!events_.empty() && time < events_.back().time) {
    throw ValidationError("genealogy: events must be appended in time order");
  }
  for (AncestorIndex a : ancestors) {
    if (a >= particle_count_) {
      throw ValidationError("genealogy: ancestor index " + std::to_string(a) + " out of range");
    }
  }
  advance_to(time);
  events_.push_back({time, std::vector<AncestorIndex>(ancestors.begin(), ancestors.end())});
}

}  // namespace plsmc::smc
