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

#ifndef PLSMC_SMC_WEIGHTS_HPP
#define PLSMC_SMC_WEIGHTS_HPP

#include <span>
#include <vector>

namespace plsmc::smc {

struct NormalizedWeights {
  std::vector<double> weights;
  /// logsumexp(log_weights) - log N: the log of the average unnormalized weight.
  double log_mean;
};

/// Left-to-right log-sum-exp. Returns -inf when every entry is -inf.
double log_sum_exp(std::span<const double> values);

/// Writes normalized linear weights into `out` and returns the log-mean.
/// Throws DegeneracyError when no entry is finite.
double normalize_log_weights(std::span<const double> log_weights, std::span<double> out);

NormalizedWeights normalize_log_weights(std::span<const double> log_weights);

/// Effective sample size 1 / sum w_i^2 of normalized weights.
double ess(std::span<const double> normalized_weights);

}  // namespace plsmc::smc

#endif  // PLSMC_SMC_WEIGHTS_HPP
