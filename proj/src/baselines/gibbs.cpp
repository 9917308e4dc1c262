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

#include "plsmc/baselines/gibbs.hpp"

#include <cmath>
#include <string>

#include "plsmc/error.hpp"
#include "plsmc/math.hpp"
#include "plsmc/random.hpp"

namespace plsmc::baselines {

void GibbsConfig::validate() const {
  if (burn_in >= iterations) {
    throw ValidationError("gibbs: burn_in (" + std::to_string(burn_in) +
                          ") must be smaller than iterations (" + std::to_string(iterations) + ")");
  }
  if (init) {
    init->validate();
  }
}

std::vector<GibbsDraw> gibbs_mixture(const models::MixtureModelSpec& spec,
                                     const models::Dataset& data, const GibbsConfig& cfg) {
  spec.validate();
  cfg.validate();
  for (double y : data.observations) {
    if (!std::isfinite(y)) {
      throw ValidationError("gibbs: observations must be finite");
    }
  }
  const std::size_t K = spec.K;
  Rng rng(cfg.seed);

  models::MixtureParams params;
  if (cfg.init) {
    if (cfg.init->size() != K) {
      throw ValidationError("gibbs: initial parameters do not have K components");
    }
    params = *cfg.init;
  } else {
    models::sample_mixture_params(models::MixtureSuffStats::empty(K), spec, rng, params);
  }

  std::vector<std::size_t> allocations(data.size());
  std::vector<double> log_probs(K);
  std::vector<double> probs(K);
  std::vector<GibbsDraw> draws;
  draws.reserve(cfg.iterations - cfg.burn_in);

  for (std::size_t iter = 0; iter < cfg.iterations; ++iter) {
    auto stats = models::MixtureSuffStats::empty(K);
    for (std::size_t t = 0; t < data.size(); ++t) {
      const double y = data.observations[t];
      double max_log = -INFINITY;
      for (std::size_t k = 0; k < K; ++k) {
        log_probs[k] = std::log(params.weights[k]) +
                       log_normal_density(y, params.means[k], params.variances[k]);
        max_log = std::max(max_log, log_probs[k]);
      }
      double total = 0.0;
      for (std::size_t k = 0; k < K; ++k) {
        probs[k] = std::exp(log_probs[k] - max_log);
        total += probs[k];
      }
      for (double& p : probs) {
        p /= total;
      }
      allocations[t] = sample_categorical(probs, uniform01(rng));
      models::absorb(stats, y, allocations[t]);
    }
    models::sample_mixture_params(stats, spec, rng, params);
    if (iter >= cfg.burn_in) {
      draws.push_back({params, allocations});
    }
  }
  return draws;
}

}  // namespace plsmc::baselines
