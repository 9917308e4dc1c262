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

#include "plsmc/models/dataset.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "plsmc/error.hpp"
#include "plsmc/format.hpp"

namespace plsmc::models {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream stream(line);
  while (std::getline(stream, cell, ',')) {
    if (!cell.empty() && cell.back() == '\r') {
      cell.pop_back();
    }
    cells.push_back(cell);
  }
  if (!line.empty() && line.back() == ',') {
    cells.emplace_back();
  }
  return cells;
}

}  // namespace

void validate_dataset(const Dataset& data) {
  if (data.observations.empty()) {
    throw ValidationError("dataset: at least one observation is required");
  }
  for (double y : data.observations) {
    if (!std::isfinite(y)) {
      throw ValidationError("dataset: observations must be finite");
    }
  }
}

Dataset truncate(const Dataset& data, std::size_t T) {
  if (data.size() < T) {
    throw ValidationError("dataset has " + std::to_string(data.size()) +
                          " observations, horizon T=" + std::to_string(T) + " requested");
  }
  Dataset out;
  out.observations.assign(data.observations.begin(), data.observations.begin() + T);
  if (data.ground_truth) {
    GroundTruth truth;
    truth.params = data.ground_truth->params;
    const auto& alloc = data.ground_truth->allocations;
    const auto& latent = data.ground_truth->latent;
    truth.allocations.assign(alloc.begin(), alloc.begin() + std::min(T, alloc.size()));
    truth.latent.assign(latent.begin(), latent.begin() + std::min(T, latent.size()));
    out.ground_truth = std::move(truth);
  }
  return out;
}

void write_dataset_csv(std::ostream& out, const Dataset& data) {
  const GroundTruth* truth = data.ground_truth ? &*data.ground_truth : nullptr;
  out << (truth ? "t,y,x_true,z_true\n" : "t,y\n");
  for (std::size_t t = 0; t < data.size(); ++t) {
    out << (t + 1) << ',' << format_double(data.observations[t]);
    if (truth) {
      out << ',';
      if (t < truth->latent.size()) {
        out << format_double(truth->latent[t]);
      }
      out << ',';
      if (t < truth->allocations.size()) {
        out << truth->allocations[t];
      }
    }
    out << '\n';
  }
}

void write_dataset_csv(const std::filesystem::path& path, const Dataset& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot open " + path.string() + " for writing");
  }
  write_dataset_csv(out, data);
  if (!out) {
    throw IoError("failed writing " + path.string());
  }
}

Dataset read_dataset_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) {
    throw ValidationError("dataset CSV is empty");
  }
  const auto header = split_csv_line(line);
  std::ptrdiff_t y_col = -1;
  std::ptrdiff_t x_col = -1;
  std::ptrdiff_t z_col = -1;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == "y") y_col = static_cast<std::ptrdiff_t>(i);
    if (header[i] == "x_true") x_col = static_cast<std::ptrdiff_t>(i);
    if (header[i] == "z_true") z_col = static_cast<std::ptrdiff_t>(i);
  }
  if (y_col < 0) {
    throw ValidationError("dataset CSV has no 'y' column");
  }

  Dataset data;
  GroundTruth truth;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty() || line == "\r") {
      continue;
    }
    const auto cells = split_csv_line(line);
    const auto cell = [&](std::ptrdiff_t col) -> const std::string& {
      if (col >= static_cast<std::ptrdiff_t>(cells.size())) {
        throw ValidationError("dataset CSV row " + std::to_string(row) + " is too short");
      }
      return cells[static_cast<std::size_t>(col)];
    };
    data.observations.push_back(parse_double(cell(y_col)));
    if (x_col >= 0 && !cell(x_col).empty()) {
      truth.latent.push_back(parse_double(cell(x_col)));
    }
    if (z_col >= 0 && !cell(z_col).empty()) {
      truth.allocations.push_back(static_cast<std::size_t>(std::stoull(cell(z_col))));
    }
  }
  if (!truth.latent.empty() || !truth.allocations.empty()) {
    data.ground_truth = std::move(truth);
  }
  return data;
}

Dataset read_dataset_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open " + path.string());
  }
  return read_dataset_csv(in);
}

}  // namespace plsmc::models
