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

#ifndef PLSMC_DIAGNOSTICS_PATH_FUNCTIONAL_HPP
#define PLSMC_DIAGNOSTICS_PATH_FUNCTIONAL_HPP

#include <cstddef>

#include "plsmc/error.hpp"
#include "plsmc/smc/particle_set.hpp"

namespace plsmc::diagnostics {

/// Weighted average of the per-particle running functionals under the current
/// normalized weights. Throws ContractError if the payload has no functional.
template <class State>
double path_functional_estimate(const smc::ParticleSet<State>& particles) {
  if constexpr (requires(const State& s) { static_cast<double>(s.functional); }) {
    const auto weights = particles.weights();
    double estimate = 0.0;
    for (std::size_t i = 0; i < particles.size(); ++i) {
      estimate += weights[i] * particles[i].functional;
    }
    return estimate;
  } else {
    throw ContractError("particle payload does not carry a path functional");
  }
}

}  // namespace plsmc::diagnostics

#endif  // PLSMC_DIAGNOSTICS_PATH_FUNCTIONAL_HPP
