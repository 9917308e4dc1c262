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

#ifndef PLSMC_HARNESS_EXPERIMENT_HPP
#define PLSMC_HARNESS_EXPERIMENT_HPP

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "plsmc/diagnostics/trace.hpp"
#include "plsmc/filters/filters.hpp"
#include "plsmc/harness/config.hpp"
#include "plsmc/models/dataset.hpp"

namespace plsmc::harness {

/// Column order of every trace CSV.
inline constexpr const char* kTraceHeader =
    "rep,t,ess,log_evidence_increment,distinct_ancestors_from_1,distinct_suffstats,path_functional";

struct ExperimentResult {
  models::Dataset data;
  /// Indexed by replication, whatever order the workers finished in.
  std::vector<filters::RunOutcome> runs;
  nlohmann::json report;
};

/// The configured dataset, truncated to the horizon T.
models::Dataset load_dataset(const ExperimentConfig& config);

/// Exact reference values for the configured model and dataset:
/// {"oracle": {"name", "value"} | null, "notices": [...], plus
/// "path_functional_target" for local level models}. Guard violations become notices.
nlohmann::json compute_oracles(const ExperimentConfig& config, const models::Dataset& data);

/// Runs replication r with seed derive_seed(master_seed, r).
filters::RunOutcome run_replication(const ExperimentConfig& config, const models::Dataset& data,
                                    std::size_t replication);

/// Runs all R replications on up to `workers` threads and builds the report. The
/// result does not depend on `workers`.
ExperimentResult run_replications(const ExperimentConfig& config, std::size_t workers);

/// Writes one trace in the CSV schema; the trace is validated first.
void write_trace_csv(std::ostream& out, std::size_t replication, const diagnostics::DiagnosticTrace& trace);

/// Runs the experiment and writes into config.output_dir:
///   dataset.csv, traces/rep_NNNN.csv (one per replication), report.json.
/// Throws IoError when the directory or a file cannot be written.
ExperimentResult run_experiment(const ExperimentConfig& config, std::size_t workers);

/// Serializes JSON with a trailing newline.
void write_json_file(const std::filesystem::path& path, const nlohmann::json& doc);

}  // namespace plsmc::harness

#endif  // PLSMC_HARNESS_EXPERIMENT_HPP
