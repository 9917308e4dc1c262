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

#ifndef PLSMC_BASELINES_GIBBS_HPP
#define PLSMC_BASELINES_GIBBS_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "plsmc/models/dataset.hpp"
#include "plsmc/models/mixture.hpp"

namespace plsmc::baselines {

struct GibbsConfig {
  std::size_t iterations = 10'000;
  std::size_t burn_in = 1'000;
  std::uint64_t seed = 0;
  /// Starting parameters; a prior draw when absent.
  std::optional<models::MixtureParams> init;

  void validate() const;
};

struct GibbsDraw {
  models::MixtureParams params;
  std::vector<std::size_t> allocations;
};

/// Data-augmentation Gibbs sampler: allocations given parameters, then parameters
/// given allocations from the same conjugate conditionals PL uses. No ordering
/// constraint is imposed on the labels. Returns iterations - burn_in draws.
/// An empty dataset is allowed and yields prior draws.
std::vector<GibbsDraw> gibbs_mixture(const models::MixtureModelSpec& spec,
                                     const models::Dataset& data, const GibbsConfig& cfg);

}  // namespace plsmc::baselines

#endif  // PLSMC_BASELINES_GIBBS_HPP
