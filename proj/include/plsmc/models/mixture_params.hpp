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

#ifndef PLSMC_MODELS_MIXTURE_PARAMS_HPP
#define PLSMC_MODELS_MIXTURE_PARAMS_HPP

#include <cstddef>
#include <vector>

namespace plsmc::models {

/// One draw of the mixture parameters.
struct MixtureParams {
  std::vector<double> weights;
  std::vector<double> means;
  std::vector<double> variances;

  std::size_t size() const { return weights.size(); }

  /// Throws ValidationError on length mismatch, negative weights, weights not summing
  /// to 1 within 1e-12, or non-positive variances.
  void validate() const;
};

}  // namespace plsmc::models

#endif  // PLSMC_MODELS_MIXTURE_PARAMS_HPP
