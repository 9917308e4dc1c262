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

#ifndef PLSMC_HARNESS_CONFIG_HPP
#define PLSMC_HARNESS_CONFIG_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "plsmc/filters/filters.hpp"
#include "plsmc/models/local_level.hpp"
#include "plsmc/models/mixture.hpp"

namespace plsmc::harness {

using ModelSpec = std::variant<models::MixtureModelSpec, models::LocalLevelSpec>;

struct DatasetSource {
  enum class Kind { inline_values, path, simulate };
  Kind kind = Kind::simulate;
  std::vector<double> values;
  /// Resolved against the config file's directory.
  std::filesystem::path path;
  std::uint64_t simulate_seed = 0;
  /// Generating parameters for mixture simulation.
  std::optional<models::MixtureParams> params;
};

struct GibbsSettings {
  std::size_t iterations = 5'000;
  std::size_t burn_in = 1'000;
};

/// One experiment: R seeded replications of one filter on one dataset.
struct ExperimentConfig {
  ModelSpec model;
  DatasetSource dataset;
  filters::FilterKind algorithm = filters::FilterKind::bootstrap;
  bool baselines = false;
  GibbsSettings gibbs;
  std::size_t N = 1000;
  std::size_t T = 100;
  std::size_t R = 1;
  std::uint64_t master_seed = 0;
  filters::FilterOptions options;
  std::filesystem::path output_dir = "out";

  bool is_mixture() const { return std::holds_alternative<models::MixtureModelSpec>(model); }

  /// Throws ValidationError on any inconsistency (ranges, algorithm/model mismatch).
  void validate() const;
};

/// Parses the JSON config document. Unknown keys are rejected. Relative dataset
/// paths are resolved against `base_dir`.
ExperimentConfig parse_config(const nlohmann::json& doc, const std::filesystem::path& base_dir = {});

/// Reads and parses a config file. Throws IoError if unreadable, ValidationError if invalid.
ExperimentConfig load_config(const std::filesystem::path& path);

/// Canonical JSON form of everything that determines the results. The output
/// directory is excluded.
nlohmann::json canonical_json(const ExperimentConfig& config);

/// 16 hex digits of the FNV-1a digest of the canonical JSON.
std::string config_digest(const ExperimentConfig& config);

}  // namespace plsmc::harness

#endif  // PLSMC_HARNESS_CONFIG_HPP
