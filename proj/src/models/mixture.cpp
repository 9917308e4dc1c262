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

#include "plsmc/models/mixture.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <limits>
#include <numbers>
#include <string>

#include "plsmc/error.hpp"
#include "plsmc/math.hpp"

namespace plsmc::models {

namespace {

void append_bytes(std::string& out, std::uint64_t bits) {
  for (int i = 0; i < 8; ++i) {
    out.push_back(static_cast<char>((bits >> (8 * i)) & 0xFFu));
  }
}

// Running log-sum-exp with a fixed accumulation order.
class LogSumAccumulator {
 public:
  void add(double log_value) {
    if (log_value == -std::numeric_limits<double>::infinity()) {
      return;
    }
    if (log_value > max_) {
      sum_ = sum_ * std::exp(max_ - log_value) + 1.0;
      max_ = log_value;
    } else {
      sum_ += std::exp(log_value - max_);
    }
  }
  double value() const { return max_ + std::log(sum_); }

 private:
  double max_ = -std::numeric_limits<double>::infinity();
  double sum_ = 0.0;
};

}  // namespace

void MixtureParams::validate() const {
  const std::size_t K = weights.size();
  if (K == 0 || means.size() != K || variances.size() != K) {
    throw ValidationError("mixture params: weights, means and variances must share a non-zero length");
  }
  double total = 0.0;
  for (std::size_t k = 0; k < K; ++k) {
    if (!(weights[k] >= 0.0) || !std::isfinite(weights[k])) {
      throw ValidationError("mixture params: weights must be finite and nonnegative");
    }
    if (!(variances[k] > 0.0) || !std::isfinite(variances[k])) {
      throw ValidationError("mixture params: variances must be finite and positive");
    }
    if (!std::isfinite(means[k])) {
      throw ValidationError("mixture params: means must be finite");
    }
    total += weights[k];
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw ValidationError("mixture params: weights sum to " + std::to_string(total) + ", expected 1");
  }
}

void MixtureModelSpec::validate() const {
  if (K < 2) {
    throw ValidationError("mixture spec: K must be at least 2");
  }
  const auto positive = [](double v) { return v > 0.0 && std::isfinite(v); };
  if (!positive(dirichlet_weight) || !positive(kappa0) || !positive(a0) || !positive(b0)) {
    throw ValidationError("mixture spec: dirichlet_weight, kappa0, a0 and b0 must be positive");
  }
  if (!std::isfinite(m0)) {
    throw ValidationError("mixture spec: m0 must be finite");
  }
}

std::uint64_t MixtureSuffStats::total_count() const {
  std::uint64_t total = 0;
  for (const auto& c : components) {
    total += c.n;
  }
  return total;
}

std::string canonical_bytes(const MixtureSuffStats& stats) {
  std::string out;
  out.reserve(stats.size() * 24);
  for (const auto& c : stats.components) {
    append_bytes(out, c.n);
    // +0.0 and -0.0 are the same statistic.
    append_bytes(out, std::bit_cast<std::uint64_t>(c.sum + 0.0));
    append_bytes(out, std::bit_cast<std::uint64_t>(c.sum_sq + 0.0));
  }
  return out;
}

NigPosterior nig_posterior(const ComponentStats& stats, const MixtureModelSpec& spec) {
  if (stats.n == 0) {
    return {spec.m0, spec.kappa0, spec.a0, spec.b0};
  }
  const double n = static_cast<double>(stats.n);
  const double mean = stats.sum / n;
  const double centered = std::max(0.0, stats.sum_sq - stats.sum * mean);
  const double kappa = spec.kappa0 + n;
  const double shift = mean - spec.m0;
  return {
      (spec.kappa0 * spec.m0 + stats.sum) / kappa,
      kappa,
      spec.a0 + 0.5 * n,
      spec.b0 + 0.5 * centered + spec.kappa0 * n * shift * shift / (2.0 * kappa),
  };
}

double nig_predictive_logdensity(double y, const NigPosterior& post) {
  // Student-t with 2a degrees of freedom, location m, squared scale b (kappa + 1) / (a kappa).
  const double spread = 2.0 * post.scale * (post.kappa + 1.0) / post.kappa;
  const double d = y - post.mean;
  return std::lgamma(post.shape + 0.5) - std::lgamma(post.shape) -
         0.5 * (std::log(std::numbers::pi * spread)) -
         (post.shape + 0.5) * std::log1p(d * d / spread);
}

double nig_log_marginal(const ComponentStats& stats, const MixtureModelSpec& spec) {
  if (stats.n == 0) {
    return 0.0;
  }
  const NigPosterior post = nig_posterior(stats, spec);
  const double n = static_cast<double>(stats.n);
  return -0.5 * n * kLogTwoPi + 0.5 * std::log(spec.kappa0 / post.kappa) +
         spec.a0 * std::log(spec.b0) - post.shape * std::log(post.scale) +
         std::lgamma(post.shape) - std::lgamma(spec.a0);
}

double mixture_predictive_terms(double y, const MixtureSuffStats& stats,
                                const MixtureModelSpec& spec, std::span<double> out) {
  const std::size_t K = stats.size();
  const double delta = spec.dirichlet_weight;
  const double log_norm =
      std::log(static_cast<double>(stats.total_count()) + static_cast<double>(K) * delta);
  double max_term = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < K; ++k) {
    const ComponentStats& c = stats.components[k];
    out[k] = std::log(static_cast<double>(c.n) + delta) - log_norm +
             nig_predictive_logdensity(y, nig_posterior(c, spec));
    max_term = std::max(max_term, out[k]);
  }
  double sum = 0.0;
  for (std::size_t k = 0; k < K; ++k) {
    sum += std::exp(out[k] - max_term);
  }
  return max_term + std::log(sum);
}

double mixture_predictive_logdensity(double y, const MixtureSuffStats& stats,
                                     const MixtureModelSpec& spec) {
  std::vector<double> terms(stats.size());
  return mixture_predictive_terms(y, stats, spec, terms);
}

void absorb(MixtureSuffStats& stats, double y, std::size_t k) {
  if (k >= stats.size()) {
    throw IndexError("component index " + std::to_string(k) + " out of range for K=" +
                     std::to_string(stats.size()));
  }
  ComponentStats& c = stats.components[k];
  c.n += 1;
  c.sum += y;
  c.sum_sq += y * y;
}

MixtureSuffStats update_mixture_suffstats(MixtureSuffStats stats, double y, std::size_t k) {
  absorb(stats, y, k);
  return stats;
}

void sample_mixture_params(const MixtureSuffStats& stats, const MixtureModelSpec& spec, Rng& rng,
                           MixtureParams& out) {
  const std::size_t K = stats.size();
  out.weights.resize(K);
  out.means.resize(K);
  out.variances.resize(K);

  double total = 0.0;
  for (std::size_t k = 0; k < K; ++k) {
    out.weights[k] = gamma_draw(rng, spec.dirichlet_weight + static_cast<double>(stats.components[k].n));
    total += out.weights[k];
  }
  for (double& w : out.weights) {
    w /= total;
  }
  for (std::size_t k = 0; k < K; ++k) {
    const NigPosterior post = nig_posterior(stats.components[k], spec);
    const double variance = inverse_gamma_draw(rng, post.shape, post.scale);
    out.variances[k] = variance;
    out.means[k] = post.mean + std::sqrt(variance / post.kappa) * standard_normal(rng);
  }
}

MixtureParams sample_mixture_params(const MixtureSuffStats& stats, const MixtureModelSpec& spec,
                                    Rng& rng) {
  MixtureParams params;
  sample_mixture_params(stats, spec, rng, params);
  return params;
}

double allocation_log_joint(const MixtureSuffStats& stats, const MixtureModelSpec& spec) {
  const double delta = spec.dirichlet_weight;
  const double K = static_cast<double>(stats.size());
  const double n = static_cast<double>(stats.total_count());
  double value = std::lgamma(K * delta) - std::lgamma(K * delta + n);
  const double lgamma_delta = std::lgamma(delta);
  for (const auto& c : stats.components) {
    value += std::lgamma(delta + static_cast<double>(c.n)) - lgamma_delta;
    value += nig_log_marginal(c, spec);
  }
  return value;
}

namespace {

void enumerate_allocations(const MixtureModelSpec& spec, std::span<const double> ys,
                           std::size_t depth, MixtureSuffStats& stats, LogSumAccumulator& acc) {
  if (depth == ys.size()) {
    acc.add(allocation_log_joint(stats, spec));
    return;
  }
  const double y = ys[depth];
  for (std::size_t k = 0; k < stats.size(); ++k) {
    const ComponentStats saved = stats.components[k];
    absorb(stats, y, k);
    enumerate_allocations(spec, ys, depth + 1, stats, acc);
    stats.components[k] = saved;
  }
}

}  // namespace

double enumerate_mixture_log_evidence(const MixtureModelSpec& spec, const Dataset& data) {
  spec.validate();
  validate_dataset(data);
  std::uint64_t terms = 1;
  for (std::size_t t = 0; t < data.size(); ++t) {
    terms *= spec.K;
    if (terms > kEnumerationLimit) {
      throw OracleGuardError("enumeration needs K^T = " + std::to_string(spec.K) + "^" +
                             std::to_string(data.size()) + " terms, above the limit of " +
                             std::to_string(kEnumerationLimit));
    }
  }
  MixtureSuffStats stats = MixtureSuffStats::empty(spec.K);
  LogSumAccumulator acc;
  enumerate_allocations(spec, data.observations, 0, stats, acc);
  return acc.value();
}

Dataset simulate_mixture_data(const MixtureModelSpec& spec, const MixtureParams& params,
                              std::size_t T, std::uint64_t seed) {
  spec.validate();
  params.validate();
  if (params.size() != spec.K) {
    throw ValidationError("mixture params have " + std::to_string(params.size()) +
                          " components, spec has K=" + std::to_string(spec.K));
  }
  if (T == 0) {
    throw ValidationError("simulate_mixture_data: T must be at least 1");
  }
  Rng rng(seed);
  Dataset data;
  data.observations.reserve(T);
  GroundTruth truth;
  truth.params = params;
  truth.allocations.reserve(T);
  for (std::size_t t = 0; t < T; ++t) {
    const std::size_t k = sample_categorical(params.weights, uniform01(rng));
    const double y = params.means[k] + std::sqrt(params.variances[k]) * standard_normal(rng);
    truth.allocations.push_back(k);
    data.observations.push_back(y);
  }
  data.ground_truth = std::move(truth);
  return data;
}

}  // namespace plsmc::models
