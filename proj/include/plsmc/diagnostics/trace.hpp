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

#ifndef PLSMC_DIAGNOSTICS_TRACE_HPP
#define PLSMC_DIAGNOSTICS_TRACE_HPP

#include <cstddef>
#include <vector>

namespace plsmc::diagnostics {

/// Per-step record of a filter run. Entry t-1 describes step t.
/// Columns that do not apply to a model family are left empty.
struct DiagnosticTrace {
  std::size_t N = 0;
  std::vector<double> ess;
  std::vector<double> log_evidence_increment;
  std::vector<std::size_t> distinct_ancestors_from_1;
  /// Mixture runs only.
  std::vector<std::size_t> distinct_suffstats;
  /// Local level runs only.
  std::vector<double> path_functional;
  /// Local level runs only; weighted mean of the particle states.
  std::vector<double> filtered_mean;

  std::size_t size() const { return ess.size(); }

  /// Sum of the increments, accumulated left to right.
  double total_log_evidence() const;

  /// Throws ValidationError unless column lengths agree, 1 <= ess <= N,
  /// 1 <= distinct counts <= N and the ancestor count never increases.
  void validate() const;
};

}  // namespace plsmc::diagnostics

#endif  // PLSMC_DIAGNOSTICS_TRACE_HPP
