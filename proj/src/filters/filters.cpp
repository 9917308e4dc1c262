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

#include "plsmc/filters/filters.hpp"

#include <chrono>
#include <cmath>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "plsmc/diagnostics/ancestry.hpp"
#include "plsmc/diagnostics/path_functional.hpp"
#include "plsmc/format.hpp"
#include "plsmc/math.hpp"
#include "plsmc/smc/unique.hpp"

namespace plsmc::filters {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void require_particles(std::size_t N) {
  if (N < 2) {
    throw ValidationError("particle count N must be at least 2");
  }
}

std::string options_signature(const FilterOptions& options) {
  std::ostringstream out;
  out << "scheme=" << smc::to_string(options.scheme) << ";trigger="
      << (options.trigger.policy == ResampleTrigger::Policy::always
              ? std::string("always")
              : "ess<" + format_double(options.trigger.threshold))
      << ";functional=" << (options.functional == PathFunctional::state_sum ? "sum" : "sum_sq");
  return out.str();
}

std::string data_signature(const models::Dataset& data) {
  Fnv1a hash;
  hash.update(std::span<const double>(data.observations));
  std::ostringstream out;
  out << "T=" << data.size() << ";data=" << std::hex << hash.digest();
  return out.str();
}

std::string mixture_signature(FilterKind kind, const models::MixtureModelSpec& spec,
                              const models::Dataset& data, std::size_t N, const FilterOptions& options) {
  std::ostringstream out;
  out << to_string(kind) << ";mixture K=" << spec.K << ",delta=" << format_double(spec.dirichlet_weight)
      << ",m0=" << format_double(spec.m0) << ",kappa0=" << format_double(spec.kappa0)
      << ",a0=" << format_double(spec.a0) << ",b0=" << format_double(spec.b0) << ";N=" << N << ';'
      << data_signature(data) << ';' << options_signature(options);
  return out.str();
}

std::size_t distinct_statistics(std::span<const MixtureParticle> particles,
                                std::vector<std::string>& keys) {
  keys.resize(particles.size());
  for (std::size_t i = 0; i < particles.size(); ++i) {
    keys[i] = models::canonical_bytes(particles[i].stats);
  }
  return smc::unique_count(std::span<const std::string>(keys));
}

// Reweights, converting total particle death into an error that carries the trace.
template <class State>
double reweight_or_abort(smc::ParticleSet<State>& particles, std::span<const double> increments,
                         const diagnostics::DiagnosticTrace& trace, std::size_t t) {
  try {
    return particles.reweight(increments);
  } catch (const DegeneracyError& e) {
    throw FilterDegeneracyError("all particles have zero weight at t=" + std::to_string(t) + " (" +
                                    e.what() + ")",
                                trace);
  }
}

smc::ParticleSet<MixtureParticle> prior_population(const models::MixtureModelSpec& spec,
                                                   std::size_t N, Rng& rng) {
  std::vector<MixtureParticle> initial(N);
  const auto empty = models::MixtureSuffStats::empty(spec.K);
  for (auto& particle : initial) {
    particle.stats = empty;
    models::sample_mixture_params(particle.stats, spec, rng, particle.params);
  }
  return smc::ParticleSet<MixtureParticle>(std::move(initial));
}

}  // namespace

std::string_view to_string(FilterKind kind) {
  switch (kind) {
    case FilterKind::bootstrap:
      return "bootstrap";
    case FilterKind::particle_learning:
      return "particle_learning";
    case FilterKind::storvik:
      return "storvik";
  }
  return "unknown";
}

FilterKind parse_filter_kind(std::string_view name) {
  for (auto kind : {FilterKind::bootstrap, FilterKind::particle_learning, FilterKind::storvik}) {
    if (to_string(kind) == name) {
      return kind;
    }
  }
  throw ValidationError("unknown algorithm '" + std::string(name) + "'");
}

FilterOptions default_options(FilterKind kind) {
  FilterOptions options;
  options.trigger = kind == FilterKind::particle_learning ? ResampleTrigger::always()
                                                          : ResampleTrigger::adaptive(0.5);
  return options;
}

RunResult<MixtureParticle> run_pl_mixture(const models::MixtureModelSpec& spec,
                                          const models::Dataset& data, std::size_t N,
                                          std::uint64_t seed, const FilterOptions& options) {
  const auto start = Clock::now();
  spec.validate();
  models::validate_dataset(data);
  require_particles(N);

  Rng rng(seed);
  auto particles = prior_population(spec, N, rng);
  diagnostics::CoalescenceTracker tracker(N, 1);
  diagnostics::DiagnosticTrace trace;
  trace.N = N;

  const std::size_t K = spec.K;
  std::vector<double> log_predictive(N);
  std::vector<double> terms(N * K);
  std::vector<double> allocation(K);
  std::vector<std::string> keys;

  for (std::size_t t = 1; t <= data.size(); ++t) {
    particles.set_time(t);
    const double y = data.observations[t - 1];
    for (std::size_t i = 0; i < N; ++i) {
      log_predictive[i] = models::mixture_predictive_terms(
          y, particles[i].stats, spec, std::span<double>(terms).subspan(i * K, K));
    }
    const double increment = reweight_or_abort(particles, log_predictive, trace, t);
    const double ess = particles.ess();

    std::span<const smc::AncestorIndex> ancestors;
    const bool resampled = options.trigger.fires(ess, N);
    if (resampled) {
      ancestors = particles.resample(options.scheme, rng);
      tracker.record(t, ancestors);
    }

    for (std::size_t j = 0; j < N; ++j) {
      const std::size_t parent = resampled ? ancestors[j] : j;
      const double* parent_terms = terms.data() + parent * K;
      for (std::size_t k = 0; k < K; ++k) {
        allocation[k] = std::exp(parent_terms[k] - log_predictive[parent]);
      }
      MixtureParticle& particle = particles[j];
      const std::size_t k = sample_categorical(allocation, uniform01(rng));
      models::absorb(particle.stats, y, k);
      models::sample_mixture_params(particle.stats, spec, rng, particle.params);
    }

    trace.ess.push_back(ess);
    trace.log_evidence_increment.push_back(increment);
    trace.distinct_ancestors_from_1.push_back(tracker.distinct());
    trace.distinct_suffstats.push_back(distinct_statistics(particles.states(), keys));
  }

  RunOutcome outcome;
  outcome.filter = FilterKind::particle_learning;
  outcome.signature = mixture_signature(outcome.filter, spec, data, N, options);
  outcome.N = N;
  outcome.seed = seed;
  outcome.log_evidence = trace.total_log_evidence();
  outcome.trace = std::move(trace);
  return {std::move(outcome), std::move(particles), seconds_since(start)};
}

RunResult<MixtureParticle> run_storvik_mixture(const models::MixtureModelSpec& spec,
                                               const models::Dataset& data, std::size_t N,
                                               std::uint64_t seed, const FilterOptions& options) {
  const auto start = Clock::now();
  spec.validate();
  models::validate_dataset(data);
  require_particles(N);

  Rng rng(seed);
  auto particles = prior_population(spec, N, rng);
  diagnostics::CoalescenceTracker tracker(N, 1);
  diagnostics::DiagnosticTrace trace;
  trace.N = N;

  std::vector<double> log_likelihood(N);
  std::vector<std::string> keys;

  for (std::size_t t = 1; t <= data.size(); ++t) {
    particles.set_time(t);
    const double y = data.observations[t - 1];
    for (std::size_t i = 0; i < N; ++i) {
      MixtureParticle& particle = particles[i];
      const auto& params = particle.params;
      const std::size_t k = sample_categorical(params.weights, uniform01(rng));
      log_likelihood[i] = log_normal_density(y, params.means[k], params.variances[k]);
      models::absorb(particle.stats, y, k);
    }
    const double increment = reweight_or_abort(particles, log_likelihood, trace, t);
    const double ess = particles.ess();
    if (options.trigger.fires(ess, N)) {
      tracker.record(t, particles.resample(options.scheme, rng));
    }
    for (auto& particle : particles.states()) {
      models::sample_mixture_params(particle.stats, spec, rng, particle.params);
    }

    trace.ess.push_back(ess);
    trace.log_evidence_increment.push_back(increment);
    trace.distinct_ancestors_from_1.push_back(tracker.distinct());
    trace.distinct_suffstats.push_back(distinct_statistics(particles.states(), keys));
  }

  RunOutcome outcome;
  outcome.filter = FilterKind::storvik;
  outcome.signature = mixture_signature(outcome.filter, spec, data, N, options);
  outcome.N = N;
  outcome.seed = seed;
  outcome.log_evidence = trace.total_log_evidence();
  outcome.trace = std::move(trace);
  return {std::move(outcome), std::move(particles), seconds_since(start)};
}

RunResult<LevelParticle> run_bootstrap_locallevel(const models::LocalLevelSpec& spec,
                                                  const models::Dataset& data, std::size_t N,
                                                  std::uint64_t seed, const FilterOptions& options) {
  const auto start = Clock::now();
  spec.validate();
  models::validate_dataset(data);
  require_particles(N);
  const double obs_var = spec.fixed_obs_var();
  const double state_sd = std::sqrt(spec.fixed_state_var());
  const double init_sd = std::sqrt(spec.init_var);

  Rng rng(seed);
  smc::ParticleSet<LevelParticle> particles{std::vector<LevelParticle>(N)};
  diagnostics::CoalescenceTracker tracker(N, 1);
  diagnostics::DiagnosticTrace trace;
  trace.N = N;

  std::vector<double> log_likelihood(N);

  for (std::size_t t = 1; t <= data.size(); ++t) {
    particles.set_time(t);
    const double y = data.observations[t - 1];
    for (std::size_t i = 0; i < N; ++i) {
      LevelParticle& particle = particles[i];
      if (t == 1) {
        particle.state = spec.init_mean + init_sd * standard_normal(rng);
      } else {
        particle.state += state_sd * standard_normal(rng);
      }
      particle.functional += options.functional == PathFunctional::state_sum
                                 ? particle.state
                                 : particle.state * particle.state;
      log_likelihood[i] = log_normal_density(y, particle.state, obs_var);
    }
    const double increment = reweight_or_abort(particles, log_likelihood, trace, t);
    const double ess = particles.ess();

    double filtered_mean = 0.0;
    const auto weights = particles.weights();
    for (std::size_t i = 0; i < N; ++i) {
      filtered_mean += weights[i] * particles[i].state;
    }
    const double functional = diagnostics::path_functional_estimate(particles);

    if (options.trigger.fires(ess, N)) {
      tracker.record(t, particles.resample(options.scheme, rng));
    }

    trace.ess.push_back(ess);
    trace.log_evidence_increment.push_back(increment);
    trace.distinct_ancestors_from_1.push_back(tracker.distinct());
    trace.path_functional.push_back(functional);
    trace.filtered_mean.push_back(filtered_mean);
  }

  RunOutcome outcome;
  outcome.filter = FilterKind::bootstrap;
  std::ostringstream signature;
  signature << "bootstrap;local_level obs_var=" << format_double(obs_var)
            << ",state_var=" << format_double(spec.fixed_state_var())
            << ",m0=" << format_double(spec.init_mean) << ",P0=" << format_double(spec.init_var)
            << ";N=" << N << ';' << data_signature(data) << ';' << options_signature(options);
  outcome.signature = signature.str();
  outcome.N = N;
  outcome.seed = seed;
  outcome.log_evidence = trace.total_log_evidence();
  outcome.trace = std::move(trace);
  return {std::move(outcome), std::move(particles), seconds_since(start)};
}

}  // namespace plsmc::filters
