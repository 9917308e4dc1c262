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

#ifndef PLSMC_SMC_PARTICLE_SET_HPP
#define PLSMC_SMC_PARTICLE_SET_HPP

#include <cmath>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "plsmc/error.hpp"
#include "plsmc/random.hpp"
#include "plsmc/smc/genealogy.hpp"
#include "plsmc/smc/resample.hpp"
#include "plsmc/smc/weights.hpp"

namespace plsmc::smc {

/// Weighted particle population with its complete genealogy.
///
/// Weights are kept normalized at all times, both as logs and in linear scale.
/// Resampling copies states into a second buffer of the same size and swaps, so
/// states that own heap storage reuse it instead of reallocating every step.
template <class State>
class ParticleSet {
 public:
  explicit ParticleSet(std::vector<State> initial)
      : states_(std::move(initial)),
        spare_(states_),
        log_weights_(states_.size()),
        weights_(states_.size()),
        scratch_(states_.size()),
        ancestors_(states_.size()),
        genealogy_(states_.size()) {
    if (states_.empty()) {
      throw ValidationError("particle set needs at least one particle");
    }
    reset_weights();
  }

  std::size_t size() const { return states_.size(); }
  std::size_t time() const { return time_; }
  void set_time(std::size_t t) {
    time_ = t;
    genealogy_.advance_to(t);
  }

  std::span<State> states() { return states_; }
  std::span<const State> states() const { return states_; }
  const State& operator[](std::size_t i) const { return states_[i]; }
  State& operator[](std::size_t i) { return states_[i]; }

  /// Normalized log weights.
  std::span<const double> log_weights() const { return log_weights_; }
  /// Normalized linear weights.
  std::span<const double> weights() const { return weights_; }
  const Genealogy& genealogy() const { return genealogy_; }

  /// Multiplies each weight by exp(log_increments[i]) and renormalizes.
  /// Returns log sum_i W_i exp(log_increments[i]) under the previous normalized
  /// weights W, the step's evidence increment. Throws DegeneracyError if every
  /// particle ends with zero weight.
  double reweight(std::span<const double> log_increments) {
    for (std::size_t i = 0; i < size(); ++i) {
      scratch_[i] = log_weights_[i] + log_increments[i];
    }
    const double log_mean = normalize_log_weights(scratch_, weights_);
    const double log_total = log_mean + std::log(static_cast<double>(size()));
    for (std::size_t i = 0; i < size(); ++i) {
      log_weights_[i] = scratch_[i] - log_total;
    }
    return log_total;
  }

  double ess() const { return smc::ess(weights_); }

  /// Draws ancestors from the current weights, replaces the population by the
  /// selected copies, resets weights to uniform and records the event at the
  /// current time. Returns the ancestor vector of the event.
  std::span<const AncestorIndex> resample(ResampleScheme scheme, Rng& rng) {
    smc::resample(weights_, scheme, rng, ancestors_, workspace_);
    for (std::size_t j = 0; j < size(); ++j) {
      spare_[j] = states_[ancestors_[j]];
    }
    std::swap(states_, spare_);
    genealogy_.append(time_, ancestors_);
    reset_weights();
    return ancestors_;
  }

 private:
  void reset_weights() {
    const double uniform = 1.0 / static_cast<double>(size());
    const double log_uniform = -std::log(static_cast<double>(size()));
    for (std::size_t i = 0; i < size(); ++i) {
      weights_[i] = uniform;
      log_weights_[i] = log_uniform;
    }
  }

  std::vector<State> states_;
  std::vector<State> spare_;
  std::vector<double> log_weights_;
  std::vector<double> weights_;
  std::vector<double> scratch_;
  std::vector<AncestorIndex> ancestors_;
  ResampleWorkspace workspace_;
  Genealogy genealogy_;
  std::size_t time_ = 0;
};

}  // namespace plsmc::smc

#endif  // PLSMC_SMC_PARTICLE_SET_HPP
