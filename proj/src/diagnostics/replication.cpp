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

#include "plsmc/diagnostics/replication.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include "plsmc/error.hpp"

namespace plsmc::diagnostics {

namespace {

double sample_mean(std::span<const double> values) {
  double total = 0.0;
  for (double v : values) {
    total += v;
  }
  return total / static_cast<double>(values.size());
}

double sample_variance(std::span<const double> values, double mean) {
  if (values.size() < 2) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  double total = 0.0;
  for (double v : values) {
    total += (v - mean) * (v - mean);
  }
  return total / static_cast<double>(values.size() - 1);
}

template <class Column>
QuantileCurve curve_of(std::span<const filters::RunOutcome> results, Column column) {
  QuantileCurve curve;
  const std::size_t T = results.front().trace.size();
  std::vector<double> sample(results.size());
  for (std::size_t t = 0; t < T; ++t) {
    for (std::size_t r = 0; r < results.size(); ++r) {
      sample[r] = column(results[r].trace, t);
    }
    curve.median.push_back(quantile(sample, 0.5));
    curve.q25.push_back(quantile(sample, 0.25));
    curve.q75.push_back(quantile(sample, 0.75));
  }
  return curve;
}

}  // namespace

double quantile(std::vector<double> sample, double p) {
  if (sample.empty()) {
    throw ValidationError("quantile of an empty sample");
  }
  std::sort(sample.begin(), sample.end());
  const double position = p * static_cast<double>(sample.size() - 1);
  const auto lower = static_cast<std::size_t>(std::floor(position));
  const std::size_t upper = std::min(lower + 1, sample.size() - 1);
  const double fraction = position - static_cast<double>(lower);
  return sample[lower] + fraction * (sample[upper] - sample[lower]);
}

ReplicationReport replication_report(std::span<const filters::RunOutcome> results) {
  if (results.size() < 2) {
    throw ValidationError("replication report needs at least 2 runs");
  }
  return summarize_runs(results);
}

ReplicationReport summarize_runs(std::span<const filters::RunOutcome> results) {
  if (results.empty()) {
    throw ValidationError("no runs to summarize");
  }
  const auto& first = results.front();
  for (const auto& run : results) {
    if (run.filter != first.filter || run.signature != first.signature || run.N != first.N ||
        run.trace.size() != first.trace.size() ||
        run.trace.distinct_suffstats.size() != first.trace.distinct_suffstats.size() ||
        run.trace.path_functional.size() != first.trace.path_functional.size()) {
      throw ValidationError("replication report: runs come from different configurations");
    }
  }

  ReplicationReport report;
  report.R = results.size();
  for (const auto& run : results) {
    report.log_evidence.push_back(run.log_evidence);
  }
  report.mean = sample_mean(report.log_evidence);
  report.sd = std::sqrt(sample_variance(report.log_evidence, report.mean));
  report.se = report.sd / std::sqrt(static_cast<double>(report.R));

  report.ess = curve_of(results, [](const DiagnosticTrace& tr, std::size_t t) { return tr.ess[t]; });
  report.distinct_ancestors_from_1 = curve_of(results, [](const DiagnosticTrace& tr, std::size_t t) {
    return static_cast<double>(tr.distinct_ancestors_from_1[t]);
  });
  if (!first.trace.distinct_suffstats.empty()) {
    report.distinct_suffstats = curve_of(results, [](const DiagnosticTrace& tr, std::size_t t) {
      return static_cast<double>(tr.distinct_suffstats[t]);
    });
  }
  if (!first.trace.path_functional.empty()) {
    report.path_functional = curve_of(
        results, [](const DiagnosticTrace& tr, std::size_t t) { return tr.path_functional[t]; });
    std::vector<double> sample(results.size());
    for (std::size_t t = 0; t < first.trace.size(); ++t) {
      for (std::size_t r = 0; r < results.size(); ++r) {
        sample[r] = results[r].trace.path_functional[t];
      }
      const double mean = sample_mean(sample);
      report.path_functional_mean.push_back(mean);
      report.path_functional_variance.push_back(sample_variance(sample, mean));
    }
  }
  return report;
}

}  // namespace plsmc::diagnostics
