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

#include "plsmc/diagnostics/trace.hpp"

#include <cmath>
#include <string>

#include "plsmc/error.hpp"

namespace plsmc::diagnostics {

double DiagnosticTrace::total_log_evidence() const {
  double total = 0.0;
  for (double increment : log_evidence_increment) {
    total += increment;
  }
  return total;
}

void DiagnosticTrace::validate() const {
  const std::size_t T = size();
  const auto fail = [](const std::string& what) { throw ValidationError("trace: " + what); };
  if (N == 0) {
    fail("particle count is zero");
  }
  if (log_evidence_increment.size() != T || distinct_ancestors_from_1.size() != T) {
    fail("column lengths differ");
  }
  if (!distinct_suffstats.empty() && distinct_suffstats.size() != T) {
    fail("distinct_suffstats column length differs");
  }
  if (!path_functional.empty() && path_functional.size() != T) {
    fail("path_functional column length differs");
  }
  const double n = static_cast<double>(N);
  constexpr double kSlack = 1e-9;
  for (std::size_t t = 0; t < T; ++t) {
    const std::string at = " at t=" + std::to_string(t + 1);
    if (!(ess[t] >= 1.0 - kSlack && ess[t] <= n * (1.0 + kSlack))) {
      fail("ess outside [1, N]" + at);
    }
    if (distinct_ancestors_from_1[t] < 1 || distinct_ancestors_from_1[t] > N) {
      fail("distinct_ancestors_from_1 outside [1, N]" + at);
    }
    if (t > 0 && distinct_ancestors_from_1[t] > distinct_ancestors_from_1[t - 1]) {
      fail("distinct_ancestors_from_1 increased" + at);
    }
    if (!distinct_suffstats.empty() && (distinct_suffstats[t] < 1 || distinct_suffstats[t] > N)) {
      fail("distinct_suffstats outside [1, N]" + at);
    }
    if (!std::isfinite(log_evidence_increment[t])) {
      fail("non-finite log evidence increment" + at);
    }
  }
}

}  // namespace plsmc::diagnostics
