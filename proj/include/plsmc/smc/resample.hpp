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

#ifndef PLSMC_SMC_RESAMPLE_HPP
#define PLSMC_SMC_RESAMPLE_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "plsmc/random.hpp"

namespace plsmc::smc {

enum class ResampleScheme { multinomial, residual, systematic, stratified };

std::string_view to_string(ResampleScheme scheme);
/// Throws ValidationError for an unknown name.
ResampleScheme parse_resample_scheme(std::string_view name);

using AncestorIndex = std::uint32_t;

/// Reusable buffers for repeated resampling without allocation.
struct ResampleWorkspace {
  std::vector<double> cumulative;
  std::vector<double> points;
  std::vector<double> residual;
};

/// Draws `out.size()` ancestor indices from the normalized `weights`.
///
/// Every scheme is unbiased: E[#{j : out[j] = i}] = out.size() * weights[i].
/// Systematic uses a single offset u ~ U[0, 1/M) with points u + j/M; stratified
/// draws one uniform per stratum [j/M, (j+1)/M). Indices are returned in
/// nondecreasing order for all schemes.
///
/// Throws ValidationError when |sum(weights) - 1| > 1e-8 or a weight is negative.
void resample(std::span<const double> weights, ResampleScheme scheme, Rng& rng,
              std::span<AncestorIndex> out, ResampleWorkspace& workspace);

std::vector<AncestorIndex> resample(std::span<const double> weights, std::size_t n_out,
                                    ResampleScheme scheme, Rng& rng);

}  // namespace plsmc::smc

#endif  // PLSMC_SMC_RESAMPLE_HPP
