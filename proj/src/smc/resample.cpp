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

#include "plsmc/smc/resample.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "plsmc/error.hpp"

namespace plsmc::smc {

namespace {

void build_cumulative(std::span<const double> weights, std::vector<double>& cumulative) {
  cumulative.resize(weights.size());
  double running = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    running += weights[i];
    cumulative[i] = running;
  }
  cumulative.back() = 1.0;
}

// Maps sorted points in [0, 1) to the first index i with point < cumulative[i].
void invert_sorted(std::span<const double> cumulative, std::span<const double> points,
                   std::span<AncestorIndex> out) {
  const std::size_t last = cumulative.size() - 1;
  std::size_t i = 0;
  for (std::size_t j = 0; j < points.size(); ++j) {
    while (i < last && !(points[j] < cumulative[i])) {
      ++i;
    }
    out[j] = static_cast<AncestorIndex>(i);
  }
}

// Sorted uniforms from normalized partial sums of exponential spacings.
void sorted_uniforms(Rng& rng, std::size_t count, std::vector<double>& points) {
  points.resize(count);
  std::exponential_distribution<double> exponential(1.0);
  double total = 0.0;
  for (std::size_t j = 0; j < count; ++j) {
    total += exponential(rng);
    points[j] = total;
  }
  total += exponential(rng);
  const double inv = 1.0 / total;
  for (double& p : points) {
    p *= inv;
  }
}

void multinomial(std::span<const double> weights, Rng& rng, std::span<AncestorIndex> out,
                 ResampleWorkspace& ws) {
  build_cumulative(weights, ws.cumulative);
  sorted_uniforms(rng, out.size(), ws.points);
  invert_sorted(ws.cumulative, ws.points, out);
}

void systematic(std::span<const double> weights, Rng& rng, std::span<AncestorIndex> out,
                ResampleWorkspace& ws) {
  const std::size_t m = out.size();
  build_cumulative(weights, ws.cumulative);
  ws.points.resize(m);
  const double offset = uniform01(rng);
  const double inv_m = 1.0 / static_cast<double>(m);
  for (std::size_t j = 0; j < m; ++j) {
    ws.points[j] = (static_cast<double>(j) + offset) * inv_m;
  }
  invert_sorted(ws.cumulative, ws.points, out);
}

void stratified(std::span<const double> weights, Rng& rng, std::span<AncestorIndex> out,
                ResampleWorkspace& ws) {
  const std::size_t m = out.size();
  build_cumulative(weights, ws.cumulative);
  ws.points.resize(m);
  const double inv_m = 1.0 / static_cast<double>(m);
  for (std::size_t j = 0; j < m; ++j) {
    ws.points[j] = (static_cast<double>(j) + uniform01(rng)) * inv_m;
  }
  invert_sorted(ws.cumulative, ws.points, out);
}

void residual(std::span<const double> weights, Rng& rng, std::span<AncestorIndex> out,
              ResampleWorkspace& ws) {
  const std::size_t m = out.size();
  const double scale = static_cast<double>(m);
  ws.residual.resize(weights.size());
  std::size_t filled = 0;
  double residual_total = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const double expected = scale * weights[i];
    const auto copies = static_cast<std::size_t>(std::floor(expected));
    for (std::size_t c = 0; c < copies && filled < m; ++c) {
      out[filled++] = static_cast<AncestorIndex>(i);
    }
    ws.residual[i] = expected - static_cast<double>(copies);
    residual_total += ws.residual[i];
  }
  const std::size_t remaining = m - filled;
  if (remaining == 0) {
    return;
  }
  if (residual_total > 0.0) {
    for (double& r : ws.residual) {
      r /= residual_total;
    }
    build_cumulative(ws.residual, ws.cumulative);
  } else {
    // Rounding left offspring unassigned with no residual mass.
    build_cumulative(weights, ws.cumulative);
  }
  sorted_uniforms(rng, remaining, ws.points);
  invert_sorted(ws.cumulative, ws.points, out.subspan(filled));
  // Deterministic copies and residual draws are each sorted; merge them.
  std::inplace_merge(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(filled), out.end());
}

}  // namespace

std::string_view to_string(ResampleScheme scheme) {
  switch (scheme) {
    case ResampleScheme::multinomial:
      return "multinomial";
    case ResampleScheme::residual:
      return "residual";
    case ResampleScheme::systematic:
      return "systematic";
    case ResampleScheme::stratified:
      return "stratified";
  }
  return "unknown";
}

ResampleScheme parse_resample_scheme(std::string_view name) {
  for (auto scheme : {ResampleScheme::multinomial, ResampleScheme::residual,
                      ResampleScheme::systematic, ResampleScheme::stratified}) {
    if (to_string(scheme) == name) {
      return scheme;
    }
  }
  throw ValidationError("unknown resampling scheme '" + std::string(name) + "'");
}

void resample(std::span<const double> weights, ResampleScheme scheme, Rng& rng,
              std::span<AncestorIndex> out, ResampleWorkspace& workspace) {
  if (weights.empty()) {
    throw ValidationError("resample: empty weight vector");
  }
  if (out.empty()) {
    throw ValidationError("resample: at least one offspring is required");
  }
  if (weights.size() > std::numeric_limits<AncestorIndex>::max()) {
    throw ValidationError("resample: too many particles for 32-bit ancestor indices");
  }
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) {
      throw ValidationError("resample: weights must be nonnegative");
    }
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-8) {
    throw ValidationError("resample: weights are not normalized (sum " + std::to_string(total) + ")");
  }
  switch (scheme) {
    case ResampleScheme::multinomial:
      multinomial(weights, rng, out, workspace);
      return;
    case ResampleScheme::residual:
      residual(weights, rng, out, workspace);
      return;
    case ResampleScheme::systematic:
      systematic(weights, rng, out, workspace);
      return;
    case ResampleScheme::stratified:
      stratified(weights, rng, out, workspace);
      return;
  }
}

std::vector<AncestorIndex> resample(std::span<const double> weights, std::size_t n_out,
                                    ResampleScheme scheme, Rng& rng) {
  std::vector<AncestorIndex> out(n_out);
  ResampleWorkspace workspace;
  resample(weights, scheme, rng, out, workspace);
  return out;
}

}  // namespace plsmc::smc
