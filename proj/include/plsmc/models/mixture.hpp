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

#ifndef PLSMC_MODELS_MIXTURE_HPP
#define PLSMC_MODELS_MIXTURE_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "plsmc/models/dataset.hpp"
#include "plsmc/models/mixture_params.hpp"
#include "plsmc/random.hpp"

namespace plsmc::models {

/// Finite Gaussian mixture with a symmetric Dirichlet prior on the weights and
/// independent Normal-Inverse-Gamma priors on each (mean, variance) pair:
///
///   sigma2_k ~ InvGamma(a0, b0),  mu_k | sigma2_k ~ N(m0, sigma2_k / kappa0),
///   w ~ Dirichlet(delta, ..., delta).
struct MixtureModelSpec {
  std::size_t K = 2;
  double dirichlet_weight = 1.0;
  double m0 = 0.0;
  double kappa0 = 1.0;
  double a0 = 2.0;
  double b0 = 2.0;

  void validate() const;
};

struct ComponentStats {
  std::uint64_t n = 0;
  double sum = 0.0;
  double sum_sq = 0.0;

  bool operator==(const ComponentStats&) const = default;
};

/// Per-component (count, sum, sum of squares) of the observations allocated so far.
struct MixtureSuffStats {
  std::vector<ComponentStats> components;

  static MixtureSuffStats empty(std::size_t K) { return {std::vector<ComponentStats>(K)}; }

  std::size_t size() const { return components.size(); }
  std::uint64_t total_count() const;

  bool operator==(const MixtureSuffStats&) const = default;
};

/// Fixed-width little-endian bytes of (n, sum, sum_sq) per component; two statistics
/// compare equal exactly when their canonical bytes do.
std::string canonical_bytes(const MixtureSuffStats& stats);

/// Conjugate posterior hyperparameters of one component.
struct NigPosterior {
  double mean;
  double kappa;
  double shape;
  double scale;
};

NigPosterior nig_posterior(const ComponentStats& stats, const MixtureModelSpec& spec);

/// Log density of the Student-t posterior predictive of one component.
double nig_predictive_logdensity(double y, const NigPosterior& post);

/// log p(y_1..y_n) for the observations summarised by `stats` under one NIG component.
double nig_log_marginal(const ComponentStats& stats, const MixtureModelSpec& spec);

/// Writes log[(n_k + delta) / (n + K delta) * t_k(y)] for each component into `out`
/// and returns their log-sum-exp, i.e. the one-step-ahead predictive log density.
/// The per-component terms are proportional to the allocation posterior of y.
double mixture_predictive_terms(double y, const MixtureSuffStats& stats,
                                const MixtureModelSpec& spec, std::span<double> out);

double mixture_predictive_logdensity(double y, const MixtureSuffStats& stats,
                                     const MixtureModelSpec& spec);

/// Absorbs y into component k (0-based). Throws IndexError when k >= K.
void absorb(MixtureSuffStats& stats, double y, std::size_t k);

MixtureSuffStats update_mixture_suffstats(MixtureSuffStats stats, double y, std::size_t k);

/// Draws (weights, means, variances) from the conjugate posterior given `stats`,
/// overwriting `out` in place (its buffers are reused).
void sample_mixture_params(const MixtureSuffStats& stats, const MixtureModelSpec& spec, Rng& rng,
                           MixtureParams& out);

MixtureParams sample_mixture_params(const MixtureSuffStats& stats, const MixtureModelSpec& spec,
                                    Rng& rng);

/// log p(z_{1:n}) + log p(y_{1:n} | z_{1:n}) for the allocation summarised by `stats`,
/// with the latent weights integrated out.
double allocation_log_joint(const MixtureSuffStats& stats, const MixtureModelSpec& spec);

/// Largest K^T accepted by the enumeration oracle.
inline constexpr std::uint64_t kEnumerationLimit = 10'000'000;

/// Exact log evidence by summing over all K^T allocation vectors.
/// Throws OracleGuardError when K^T exceeds kEnumerationLimit.
double enumerate_mixture_log_evidence(const MixtureModelSpec& spec, const Dataset& data);

/// Draws T observations; ground truth carries `params` and the 0-based allocations.
Dataset simulate_mixture_data(const MixtureModelSpec& spec, const MixtureParams& params,
                              std::size_t T, std::uint64_t seed);

}  // namespace plsmc::models

#endif  // PLSMC_MODELS_MIXTURE_HPP
