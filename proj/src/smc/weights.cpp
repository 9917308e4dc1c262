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

#include "plsmc/smc/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "plsmc/error.hpp"

namespace plsmc::smc {

double log_sum_exp(std::span<const double> values) {
  double max_value = -std::numeric_limits<double>::infinity();
  for (double v : values) {
    if (std::isnan(v)) {
      return v;
    }
    max_value = std::max(max_value, v);
  }
  if (max_value == -std::numeric_limits<double>::infinity()) {
    return max_value;
  }
  double sum = 0.0;
  for (double v : values) {
    sum += std::exp(v - max_value);
  }
  return max_value + std::log(sum);
}

double normalize_log_weights(std::span<const double> log_weights, std::span<double> out) {
  double max_value = -std::numeric_limits<double>::infinity();
  for (double v : log_weights) {
    if (std::isnan(v) || v == std::numeric_limits<double>::infinity()) {
      throw DegeneracyError("log weights contain NaN or +inf");
    }
    max_value = std::max(max_value, v);
  }
  if (log_weights.empty() || max_value == -std::numeric_limits<double>::infinity()) {
    throw DegeneracyError("all particle weights are zero");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < log_weights.size(); ++i) {
    out[i] = std::exp(log_weights[i] - max_value);
    sum += out[i];
  }
  const double inv = 1.0 / sum;
  for (std::size_t i = 0; i < log_weights.size(); ++i) {
    out[i] *= inv;
  }
  return max_value + std::log(sum) - std::log(static_cast<double>(log_weights.size()));
}

NormalizedWeights normalize_log_weights(std::span<const double> log_weights) {
  NormalizedWeights result{std::vector<double>(log_weights.size()), 0.0};
  result.log_mean = normalize_log_weights(log_weights, result.weights);
  return result;
}

double ess(std::span<const double> normalized_weights) {
  double sum_sq = 0.0;
  for (double w : normalized_weights) {
    sum_sq += w * w;
  }
  return 1.0 / sum_sq;
}

}  // namespace plsmc::smc
