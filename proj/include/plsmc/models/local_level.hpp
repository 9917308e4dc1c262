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

#ifndef PLSMC_MODELS_LOCAL_LEVEL_HPP
#define PLSMC_MODELS_LOCAL_LEVEL_HPP

#include <cstddef>
#include <cstdint>
#include <variant>

#include "plsmc/models/dataset.hpp"

namespace plsmc::models {

struct InverseGammaPrior {
  double shape;
  double scale;
};

/// A variance is either a known positive value or unknown with an inverse-gamma prior.
using Variance = std::variant<double, InverseGammaPrior>;

/// Scalar random walk observed in Gaussian noise:
///
///   x_1 ~ N(init_mean, init_var),  x_t = x_{t-1} + eta_t,  eta_t ~ N(0, state_var),
///   y_t = x_t + eps_t,  eps_t ~ N(0, obs_var).
///
/// The first innovation acts between t=1 and t=2.
struct LocalLevelSpec {
  Variance obs_var = 1.0;
  Variance state_var = 1.0;
  double init_mean = 0.0;
  double init_var = 1.0;

  void validate() const;
  bool has_fixed_variances() const;
  /// Throw ValidationError when the variance is not fixed.
  double fixed_obs_var() const;
  double fixed_state_var() const;
};

/// Ground truth carries the latent path. Requires fixed variances.
Dataset simulate_local_level_data(const LocalLevelSpec& spec, std::size_t T, std::uint64_t seed);

/// Exact log p(y_1..y_T) from the Kalman prediction-error decomposition.
double kalman_log_evidence(const LocalLevelSpec& spec, const Dataset& data);

}  // namespace plsmc::models

#endif  // PLSMC_MODELS_LOCAL_LEVEL_HPP
