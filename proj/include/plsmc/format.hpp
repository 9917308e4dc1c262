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

#ifndef PLSMC_FORMAT_HPP
#define PLSMC_FORMAT_HPP

#include <string>
#include <string_view>

namespace plsmc {

/// Shortest decimal string that parses back to exactly `value`.
std::string format_double(double value);

/// Parses a full decimal string; throws ValidationError on trailing garbage.
double parse_double(std::string_view text);

}  // namespace plsmc

#endif  // PLSMC_FORMAT_HPP
