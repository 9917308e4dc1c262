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

#ifndef PLSMC_RANDOM_HPP
#define PLSMC_RANDOM_HPP

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>

namespace plsmc {

/// Every stochastic routine takes an explicit engine; nothing is global.
using Rng = std::mt19937_64;

inline double uniform01(Rng& rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

inline double standard_normal(Rng& rng) {
  return std::normal_distribution<double>(0.0, 1.0)(rng);
}

inline double gamma_draw(Rng& rng, double shape) {
  return std::gamma_distribution<double>(shape, 1.0)(rng);
}

/// InverseGamma(shape, scale) with density proportional to x^{-shape-1} exp(-scale / x).
inline double inverse_gamma_draw(Rng& rng, double shape, double scale) {
  return scale / gamma_draw(rng, shape);
}

/// Inverts the cumulative distribution of `probs` at `u` in [0, 1): returns the first
/// index whose running sum exceeds `u` (strict comparison). The last running sum is
/// treated as exactly 1 so the final index is always reachable.
inline std::size_t sample_categorical(std::span<const double> probs, double u) {
  double cumulative = 0.0;
  const std::size_t last = probs.size() - 1;
  for (std::size_t k = 0; k < last; ++k) {
    cumulative += probs[k];
    if (u < cumulative) {
      return k;
    }
  }
  return last;
}

}  // namespace plsmc

#endif  // PLSMC_RANDOM_HPP
