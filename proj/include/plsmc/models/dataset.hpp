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

#ifndef PLSMC_MODELS_DATASET_HPP
#define PLSMC_MODELS_DATASET_HPP

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

#include "plsmc/models/mixture_params.hpp"

namespace plsmc::models {

/// What the simulator knew when it produced a dataset.
struct GroundTruth {
  std::optional<MixtureParams> params;
  /// 0-based component label of each observation (mixture data only).
  std::vector<std::size_t> allocations;
  /// Latent level x_t (local level data only).
  std::vector<double> latent;
};

struct Dataset {
  std::vector<double> observations;
  std::optional<GroundTruth> ground_truth;

  std::size_t size() const { return observations.size(); }
};

/// Throws ValidationError unless the dataset is non-empty and all values are finite.
void validate_dataset(const Dataset& data);

/// First `T` observations (and matching ground truth). Throws ValidationError if fewer exist.
Dataset truncate(const Dataset& data, std::size_t T);

/// CSV with header `t,y` plus `x_true,z_true` when ground truth exists.
/// `t` is 1-based; `z_true` carries 0-based component labels.
void write_dataset_csv(std::ostream& out, const Dataset& data);
void write_dataset_csv(const std::filesystem::path& path, const Dataset& data);

/// Reads any CSV with a `y` column; an `x_true` or `z_true` column becomes ground truth.
Dataset read_dataset_csv(std::istream& in);
Dataset read_dataset_csv(const std::filesystem::path& path);

}  // namespace plsmc::models

#endif  // PLSMC_MODELS_DATASET_HPP
