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

#ifndef PLSMC_DIAGNOSTICS_REPLICATION_HPP
#define PLSMC_DIAGNOSTICS_REPLICATION_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "plsmc/filters/filters.hpp"

namespace plsmc::diagnostics {

/// Pointwise median and quartiles (linear interpolation between order statistics).
struct QuantileCurve {
  std::vector<double> median;
  std::vector<double> q25;
  std::vector<double> q75;
};

/// Across-replication summary of one experiment.
struct ReplicationReport {
  std::size_t R = 0;
  std::vector<double> log_evidence;
  double mean = 0.0;
  /// Sample standard deviation (R - 1 denominator).
  double sd = 0.0;
  /// sd / sqrt(R).
  double se = 0.0;

  QuantileCurve ess;
  QuantileCurve distinct_ancestors_from_1;
  /// Empty unless the runs are mixture runs.
  QuantileCurve distinct_suffstats;
  /// Empty unless the runs carry a path functional.
  QuantileCurve path_functional;
  std::vector<double> path_functional_mean;
  /// Across-run sample variance of the estimate at each t.
  std::vector<double> path_functional_variance;
};

/// Linear-interpolation quantile (the R type 7 rule) of an unsorted sample.
double quantile(std::vector<double> sample, double p);

/// Throws ValidationError when R < 2 or the runs differ in anything but their seed.
ReplicationReport replication_report(std::span<const filters::RunOutcome> results);

/// As replication_report but also accepts a single run, for which sd and se are NaN.
ReplicationReport summarize_runs(std::span<const filters::RunOutcome> results);

}  // namespace plsmc::diagnostics

#endif  // PLSMC_DIAGNOSTICS_REPLICATION_HPP
