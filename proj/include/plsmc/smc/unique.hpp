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

#ifndef PLSMC_SMC_UNIQUE_HPP
#define PLSMC_SMC_UNIQUE_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "plsmc/math.hpp"

namespace plsmc::smc {

/// Number of distinct byte strings. Sorting is keyed on a hash first and falls
/// back to the full bytes, so the count is exact.
inline std::size_t unique_count(std::span<const std::string> values) {
  std::vector<std::pair<std::uint64_t, std::string_view>> keys;
  keys.reserve(values.size());
  for (const auto& v : values) {
    Fnv1a hash;
    hash.update(std::string_view(v));
    keys.emplace_back(hash.digest(), v);
  }
  std::sort(keys.begin(), keys.end());
  return static_cast<std::size_t>(std::unique(keys.begin(), keys.end()) - keys.begin());
}

/// Number of distinct values under exact equality of `serialize(value)`.
template <class T, class Serialize>
std::size_t unique_count(std::span<const T> values, Serialize serialize) {
  std::vector<std::string> keys;
  keys.reserve(values.size());
  for (const T& v : values) {
    keys.push_back(serialize(v));
  }
  return unique_count(std::span<const std::string>(keys));
}

}  // namespace plsmc::smc

#endif  // PLSMC_SMC_UNIQUE_HPP
