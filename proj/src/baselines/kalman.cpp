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

#include "plsmc/baselines/kalman.hpp"

#include "plsmc/math.hpp"

namespace plsmc::baselines {

double SmoothedMoments::sum_of_means() const {
  double total = 0.0;
  for (double m : mean) {
    total += m;
  }
  return total;
}

FilteredMoments kalman_filter_moments(const models::LocalLevelSpec& spec, const models::Dataset& data) {
  spec.validate();
  models::validate_dataset(data);
  const double obs_var = spec.fixed_obs_var();
  const double state_var = spec.fixed_state_var();
  const std::size_t T = data.size();

  FilteredMoments out;
  out.predicted_mean.reserve(T);
  out.predicted_var.reserve(T);
  out.filtered_mean.reserve(T);
  out.filtered_var.reserve(T);

  double mean = spec.init_mean;
  double var = spec.init_var;
  for (std::size_t t = 0; t < T; ++t) {
    if (t > 0) {
      var += state_var;
    }
    out.predicted_mean.push_back(mean);
    out.predicted_var.push_back(var);
    const double innovation_var = var + obs_var;
    const double gain = var / innovation_var;
    mean += gain * (data.observations[t] - mean);
    var = var * obs_var / innovation_var;
    out.filtered_mean.push_back(mean);
    out.filtered_var.push_back(var);
  }
  return out;
}

SmoothedMoments kalman_smoother_moments(const models::LocalLevelSpec& spec, const models::Dataset& data) {
  const FilteredMoments f = kalman_filter_moments(spec, data);
  const std::size_t T = f.filtered_mean.size();
  SmoothedMoments s{f.filtered_mean, f.filtered_var};
  for (std::size_t t = T - 1; t-- > 0;) {
    // Predicted variance of x_{t+1} given y_{1:t}; zero only for a static, fully known level.
    const double next_pred_var = f.predicted_var[t + 1];
    const double gain = next_pred_var > 0.0 ? f.filtered_var[t] / next_pred_var : 0.0;
    s.mean[t] = f.filtered_mean[t] + gain * (s.mean[t + 1] - f.predicted_mean[t + 1]);
    s.var[t] = f.filtered_var[t] + gain * gain * (s.var[t + 1] - next_pred_var);
  }
  return s;
}

double prediction_decomposition_log_evidence(const FilteredMoments& moments,
                                             const models::LocalLevelSpec& spec,
                                             const models::Dataset& data) {
  const double obs_var = spec.fixed_obs_var();
  double total = 0.0;
  for (std::size_t t = 0; t < data.size(); ++t) {
    total += log_normal_density(data.observations[t], moments.predicted_mean[t],
                                moments.predicted_var[t] + obs_var);
  }
  return total;
}

}  // namespace plsmc::baselines
