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

#include "plsmc/models/local_level.hpp"

#include <cmath>
#include <string>

#include "plsmc/error.hpp"
#include "plsmc/math.hpp"
#include "plsmc/random.hpp"

namespace plsmc::models {

namespace {

void validate_variance(const Variance& v, const char* name, bool allow_zero) {
  if (const double* fixed = std::get_if<double>(&v)) {
    const bool ok = allow_zero ? *fixed >= 0.0 : *fixed > 0.0;
    if (!ok || !std::isfinite(*fixed)) {
      throw ValidationError(std::string("local level spec: ") + name +
                            (allow_zero ? " must be finite and nonnegative" : " must be finite and positive"));
    }
    return;
  }
  const auto& prior = std::get<InverseGammaPrior>(v);
  if (!(prior.shape > 0.0) || !(prior.scale > 0.0) || !std::isfinite(prior.shape) ||
      !std::isfinite(prior.scale)) {
    throw ValidationError(std::string("local level spec: ") + name +
                          " inverse-gamma shape and scale must be positive");
  }
}

double fixed_or_throw(const Variance& v, const char* name) {
  if (const double* fixed = std::get_if<double>(&v)) {
    return *fixed;
  }
  throw ValidationError(std::string("local level spec: ") + name + " must be a fixed value here");
}

}  // namespace

void LocalLevelSpec::validate() const {
  validate_variance(obs_var, "obs_var", false);
  // A zero innovation variance is the static-level model.
  validate_variance(state_var, "state_var", true);
  if (!std::isfinite(init_mean)) {
    throw ValidationError("local level spec: init_mean must be finite");
  }
  if (!(init_var >= 0.0) || !std::isfinite(init_var)) {
    throw ValidationError("local level spec: init_var must be finite and nonnegative");
  }
}

bool LocalLevelSpec::has_fixed_variances() const {
  return std::holds_alternative<double>(obs_var) && std::holds_alternative<double>(state_var);
}

double LocalLevelSpec::fixed_obs_var() const { return fixed_or_throw(obs_var, "obs_var"); }

double LocalLevelSpec::fixed_state_var() const { return fixed_or_throw(state_var, "state_var"); }

Dataset simulate_local_level_data(const LocalLevelSpec& spec, std::size_t T, std::uint64_t seed) {
  spec.validate();
  const double obs_sd = std::sqrt(spec.fixed_obs_var());
  const double state_sd = std::sqrt(spec.fixed_state_var());
  if (T == 0) {
    throw ValidationError("simulate_local_level_data: T must be at least 1");
  }
  Rng rng(seed);
  Dataset data;
  GroundTruth truth;
  data.observations.reserve(T);
  truth.latent.reserve(T);
  double x = spec.init_mean + std::sqrt(spec.init_var) * standard_normal(rng);
  for (std::size_t t = 0; t < T; ++t) {
    if (t > 0) {
      x += state_sd * standard_normal(rng);
    }
    truth.latent.push_back(x);
    data.observations.push_back(x + obs_sd * standard_normal(rng));
  }
  data.ground_truth = std::move(truth);
  return data;
}

double kalman_log_evidence(const LocalLevelSpec& spec, const Dataset& data) {
  spec.validate();
  validate_dataset(data);
  const double obs_var = spec.fixed_obs_var();
  const double state_var = spec.fixed_state_var();
  double mean = spec.init_mean;
  double var = spec.init_var;
  double total = 0.0;
  for (std::size_t t = 0; t < data.size(); ++t) {
    if (t > 0) {
      var += state_var;
    }
    const double innovation = data.observations[t] - mean;
    const double innovation_var = var + obs_var;
    total += -0.5 * (kLogTwoPi + std::log(innovation_var) + innovation * innovation / innovation_var);
    const double gain = var / innovation_var;
    mean += gain * innovation;
    var = var * obs_var / innovation_var;
  }
  return total;
}

}  // namespace plsmc::models
