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

#ifndef PLSMC_MATH_HPP
#define PLSMC_MATH_HPP

#include <bit>
#include <cmath>
#include <cstdint>
#include <span>
#include <string_view>

namespace plsmc {

inline constexpr double kLogTwoPi = 1.8378770664093454835606594728112;

inline double log_normal_density(double x, double mean, double variance) {
  const double d = x - mean;
  return -0.5 * (kLogTwoPi + std::log(variance) + d * d / variance);
}

/// 64-bit FNV-1a, used for content digests (not for security).
class Fnv1a {
 public:
  void update(std::string_view bytes) {
    for (unsigned char c : bytes) {
      state_ ^= c;
      state_ *= 0x100000001b3ULL;
    }
  }
  void update(std::uint64_t value) {
    for (int i = 0; i < 8; ++i) {
      state_ ^= (value >> (8 * i)) & 0xFFu;
      state_ *= 0x100000001b3ULL;
    }
  }
  void update(double value) { update(std::bit_cast<std::uint64_t>(value)); }
  void update(std::span<const double> values) {
    for (double v : values) {
      update(v);
    }
  }
  std::uint64_t digest() const { return state_; }

 private:
  std::uint64_t state_ = 0xcbf29ce484222325ULL;
};

}  // namespace plsmc

#endif  // PLSMC_MATH_HPP
