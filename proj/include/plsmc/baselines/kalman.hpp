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

#ifndef PLSMC_BASELINES_KALMAN_HPP
#define PLSMC_BASELINES_KALMAN_HPP

#include <vector>

#include "plsmc/models/dataset.hpp"
#include "plsmc/models/local_level.hpp"

namespace plsmc::baselines {

/// Kalman recursion outputs for the local level model. Index t-1 holds step t.
struct FilteredMoments {
  /// Mean and variance of x_t given y_{1:t-1}.
  std::vector<double> predicted_mean;
  std::vector<double> predicted_var;
  /// Mean and variance of x_t given y_{1:t}.
  std::vector<double> filtered_mean;
  std::vector<double> filtered_var;
};

struct SmoothedMoments {
  /// Mean and variance of x_t given y_{1:T}.
  std::vector<double> mean;
  std::vector<double> var;

  /// E[sum_t x_t | y_{1:T}].
  double sum_of_means() const;
};

FilteredMoments kalman_filter_moments(const models::LocalLevelSpec& spec, const models::Dataset& data);

/// Fixed-interval (Rauch-Tung-Striebel) backward pass over the filtered moments.
SmoothedMoments kalman_smoother_moments(const models::LocalLevelSpec& spec, const models::Dataset& data);

/// Log evidence recombined from the one-step predictions: sum_t log N(y_t; a_t, P_t + obs_var).
double prediction_decomposition_log_evidence(const FilteredMoments& moments,
                                             const models::LocalLevelSpec& spec,
                                             const models::Dataset& data);

}  // namespace plsmc::baselines

#endif  // PLSMC_BASELINES_KALMAN_HPP
