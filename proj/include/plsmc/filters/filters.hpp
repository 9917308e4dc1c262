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

#ifndef PLSMC_FILTERS_FILTERS_HPP
#define PLSMC_FILTERS_FILTERS_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "plsmc/diagnostics/trace.hpp"
#include "plsmc/error.hpp"
#include "plsmc/models/dataset.hpp"
#include "plsmc/models/local_level.hpp"
#include "plsmc/models/mixture.hpp"
#include "plsmc/smc/particle_set.hpp"
#include "plsmc/smc/resample.hpp"

namespace plsmc::filters {

enum class FilterKind { bootstrap, particle_learning, storvik };

std::string_view to_string(FilterKind kind);
FilterKind parse_filter_kind(std::string_view name);

/// When to resample after weighting.
struct ResampleTrigger {
  enum class Policy { always, ess };
  Policy policy = Policy::always;
  /// Resample when ESS < threshold * N (ess policy only).
  double threshold = 0.5;

  static ResampleTrigger always() { return {Policy::always, 0.5}; }
  static ResampleTrigger adaptive(double threshold = 0.5) { return {Policy::ess, threshold}; }

  bool fires(double ess, std::size_t N) const {
    return policy == Policy::always || ess < threshold * static_cast<double>(N);
  }
};

/// Additive path functional carried by local level particles.
enum class PathFunctional { state_sum, state_sum_of_squares };

struct FilterOptions {
  smc::ResampleScheme scheme = smc::ResampleScheme::systematic;
  ResampleTrigger trigger = ResampleTrigger::always();
  PathFunctional functional = PathFunctional::state_sum;
};

/// Defaults: PL resamples every step; bootstrap and Storvik resample when ESS < N/2.
FilterOptions default_options(FilterKind kind);

/// Mixture particle payload: the allocations enter only through the statistics.
struct MixtureParticle {
  models::MixtureSuffStats stats;
  models::MixtureParams params;
};

struct LevelParticle {
  double state = 0.0;
  /// Running additive functional of the particle's ancestral path.
  double functional = 0.0;
};

/// Everything about a run except its particles; what replication reports consume.
struct RunOutcome {
  FilterKind filter = FilterKind::bootstrap;
  /// Identifies model, data and tuning; equal across replications of one experiment.
  std::string signature;
  std::size_t N = 0;
  std::uint64_t seed = 0;
  diagnostics::DiagnosticTrace trace;
  double log_evidence = 0.0;
};

template <class State>
struct RunResult : RunOutcome {
  RunResult(RunOutcome outcome, smc::ParticleSet<State> particles, double seconds)
      : RunOutcome(std::move(outcome)), final_particles(std::move(particles)), wall_time(seconds) {}

  smc::ParticleSet<State> final_particles;
  double wall_time;
};

/// Thrown when every particle receives zero weight. Carries the trace up to the
/// failing step.
class FilterDegeneracyError : public DegeneracyError {
 public:
  FilterDegeneracyError(const std::string& what, diagnostics::DiagnosticTrace partial)
      : DegeneracyError(what), trace_(std::move(partial)) {}
  const diagnostics::DiagnosticTrace& trace() const { return trace_; }

 private:
  diagnostics::DiagnosticTrace trace_;
};

/// Particle Learning on the Gaussian mixture. Each step weights particles by the
/// one-step predictive p(y_t | stats), records the evidence increment, resamples,
/// draws the new allocation from its posterior given the inherited statistics and
/// y_t, updates the statistics, then redraws every particle's parameters from
/// their conjugate posterior.
RunResult<MixtureParticle> run_pl_mixture(const models::MixtureModelSpec& spec,
                                          const models::Dataset& data, std::size_t N,
                                          std::uint64_t seed,
                                          const FilterOptions& options = default_options(FilterKind::particle_learning));

/// Storvik-style filter on the mixture: allocations are propagated from the
/// particle's current parameter draw, weighted by the likelihood, resampled on the
/// trigger, and the parameters are refreshed from the updated statistics.
RunResult<MixtureParticle> run_storvik_mixture(const models::MixtureModelSpec& spec,
                                               const models::Dataset& data, std::size_t N,
                                               std::uint64_t seed,
                                               const FilterOptions& options = default_options(FilterKind::storvik));

/// Bootstrap filter on the local level model (fixed variances).
RunResult<LevelParticle> run_bootstrap_locallevel(const models::LocalLevelSpec& spec,
                                                  const models::Dataset& data, std::size_t N,
                                                  std::uint64_t seed,
                                                  const FilterOptions& options = default_options(FilterKind::bootstrap));

}  // namespace plsmc::filters

#endif  // PLSMC_FILTERS_FILTERS_HPP
