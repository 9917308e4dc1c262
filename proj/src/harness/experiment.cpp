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

#include "plsmc/harness/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <thread>

#include "plsmc/baselines/gibbs.hpp"
#include "plsmc/baselines/kalman.hpp"
#include "plsmc/diagnostics/replication.hpp"
#include "plsmc/error.hpp"
#include "plsmc/format.hpp"
#include "plsmc/harness/seed.hpp"

namespace plsmc::harness {

using nlohmann::json;

namespace {

// Gibbs chains draw from a stream disjoint from the replication seeds.
constexpr std::uint64_t kBaselineStream = 0x6769626273ULL;

json curve_json(const diagnostics::QuantileCurve& curve) {
  return {{"median", curve.median}, {"q25", curve.q25}, {"q75", curve.q75}};
}

json number_or_null(double value) { return std::isfinite(value) ? json(value) : json(nullptr); }

json gibbs_summary(const ExperimentConfig& config, const models::Dataset& data) {
  baselines::GibbsConfig cfg;
  cfg.iterations = config.gibbs.iterations;
  cfg.burn_in = config.gibbs.burn_in;
  cfg.seed = derive_seed(config.master_seed ^ kBaselineStream, 0);
  const auto draws =
      baselines::gibbs_mixture(std::get<models::MixtureModelSpec>(config.model), data, cfg);
  double mixture_mean = 0.0;
  double max_mean = 0.0;
  double sum_sq_means = 0.0;
  for (const auto& draw : draws) {
    const auto& p = draw.params;
    double m = 0.0;
    double sq = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) {
      m += p.weights[k] * p.means[k];
      sq += p.means[k] * p.means[k];
    }
    mixture_mean += m;
    max_mean += *std::max_element(p.means.begin(), p.means.end());
    sum_sq_means += sq;
  }
  const double n = static_cast<double>(draws.size());
  return {{"draws", draws.size()},
          {"seed", cfg.seed},
          {"posterior_mean",
           {{"mixture_mean", mixture_mean / n},
            {"max_component_mean", max_mean / n},
            {"sum_sq_component_means", sum_sq_means / n}}}};
}

json kalman_summary(const ExperimentConfig& config, const models::Dataset& data) {
  const auto& spec = std::get<models::LocalLevelSpec>(config.model);
  const auto filtered = baselines::kalman_filter_moments(spec, data);
  const auto smoothed = baselines::kalman_smoother_moments(spec, data);
  return {{"filtered_mean", filtered.filtered_mean},
          {"filtered_var", filtered.filtered_var},
          {"smoothed_mean", smoothed.mean},
          {"smoothed_var", smoothed.var}};
}

json report_json(const ExperimentConfig& config, const models::Dataset& data,
                 const std::vector<filters::RunOutcome>& runs) {
  const auto summary = diagnostics::summarize_runs(runs);
  json report;
  report["config_digest"] = config_digest(config);
  report["R"] = summary.R;
  std::vector<std::uint64_t> seeds;
  for (const auto& run : runs) {
    seeds.push_back(run.seed);
  }
  report["seeds"] = seeds;
  report["log_evidence"] = {{"per_rep", summary.log_evidence},
                            {"mean", summary.mean},
                            {"sd", number_or_null(summary.sd)},
                            {"se", number_or_null(summary.se)}};

  std::vector<std::size_t> times(data.size());
  for (std::size_t t = 0; t < times.size(); ++t) {
    times[t] = t + 1;
  }
  json curves;
  curves["t"] = times;
  curves["ess"] = curve_json(summary.ess);
  curves["distinct_ancestors_from_1"] = curve_json(summary.distinct_ancestors_from_1);
  if (!summary.distinct_suffstats.median.empty()) {
    curves["distinct_suffstats"] = curve_json(summary.distinct_suffstats);
  }
  if (!summary.path_functional.median.empty()) {
    json pf = curve_json(summary.path_functional);
    pf["mean"] = summary.path_functional_mean;
    std::vector<json> variance;
    for (double v : summary.path_functional_variance) {
      variance.push_back(number_or_null(v));
    }
    pf["variance"] = variance;
    curves["path_functional"] = pf;
  }
  report["curves"] = curves;

  const json oracles = compute_oracles(config, data);
  report["oracle"] = oracles.at("oracle");
  report["notices"] = oracles.at("notices");
  if (oracles.contains("path_functional_target")) {
    report["path_functional_target"] = oracles.at("path_functional_target");
  }
  if (!report["oracle"].is_null() && std::isfinite(summary.se)) {
    const double value = report["oracle"]["value"].get<double>();
    report["oracle_within_3se"] = std::abs(summary.mean - value) <= 3.0 * summary.se;
  }
  if (config.baselines) {
    report["baselines"] = config.is_mixture() ? json{{"gibbs", gibbs_summary(config, data)}}
                                              : json{{"kalman", kalman_summary(config, data)}};
  }
  return report;
}

std::string trace_file_name(std::size_t replication) {
  std::ostringstream name;
  name << "rep_" << std::setw(4) << std::setfill('0') << replication << ".csv";
  return name.str();
}

}  // namespace

models::Dataset load_dataset(const ExperimentConfig& config) {
  models::Dataset data;
  switch (config.dataset.kind) {
    case DatasetSource::Kind::inline_values:
      data.observations = config.dataset.values;
      break;
    case DatasetSource::Kind::path:
      data = models::read_dataset_csv(config.dataset.path);
      break;
    case DatasetSource::Kind::simulate:
      if (config.is_mixture()) {
        return models::simulate_mixture_data(std::get<models::MixtureModelSpec>(config.model),
                                             *config.dataset.params, config.T,
                                             config.dataset.simulate_seed);
      }
      return models::simulate_local_level_data(std::get<models::LocalLevelSpec>(config.model),
                                               config.T, config.dataset.simulate_seed);
  }
  data = models::truncate(data, config.T);
  models::validate_dataset(data);
  return data;
}

json compute_oracles(const ExperimentConfig& config, const models::Dataset& data) {
  json out;
  out["oracle"] = nullptr;
  out["notices"] = json::array();
  if (config.is_mixture()) {
    try {
      const double value =
          models::enumerate_mixture_log_evidence(std::get<models::MixtureModelSpec>(config.model), data);
      out["oracle"] = {{"name", "enumeration"}, {"value", value}};
    } catch (const OracleGuardError& e) {
      out["notices"].push_back(std::string("enumeration oracle skipped: ") + e.what());
    }
  } else {
    const auto& spec = std::get<models::LocalLevelSpec>(config.model);
    out["oracle"] = {{"name", "kalman"}, {"value", models::kalman_log_evidence(spec, data)}};
    const auto smoothed = baselines::kalman_smoother_moments(spec, data);
    if (config.options.functional == filters::PathFunctional::state_sum) {
      out["path_functional_target"] = {{"name", "kalman_smoother_sum_of_means"},
                                       {"value", smoothed.sum_of_means()}};
    } else {
      double second_moment = 0.0;
      for (std::size_t t = 0; t < smoothed.mean.size(); ++t) {
        second_moment += smoothed.var[t] + smoothed.mean[t] * smoothed.mean[t];
      }
      out["path_functional_target"] = {{"name", "kalman_smoother_sum_of_second_moments"},
                                       {"value", second_moment}};
    }
  }
  return out;
}

filters::RunOutcome run_replication(const ExperimentConfig& config, const models::Dataset& data,
                                    std::size_t replication) {
  const std::uint64_t seed = derive_seed(config.master_seed, replication);
  switch (config.algorithm) {
    case filters::FilterKind::particle_learning:
      return filters::run_pl_mixture(std::get<models::MixtureModelSpec>(config.model), data, config.N,
                                     seed, config.options);
    case filters::FilterKind::storvik:
      return filters::run_storvik_mixture(std::get<models::MixtureModelSpec>(config.model), data,
                                          config.N, seed, config.options);
    case filters::FilterKind::bootstrap:
      return filters::run_bootstrap_locallevel(std::get<models::LocalLevelSpec>(config.model), data,
                                               config.N, seed, config.options);
  }
  throw ValidationError("unknown algorithm");
}

ExperimentResult run_replications(const ExperimentConfig& config, std::size_t workers) {
  if (workers == 0) {
    throw ValidationError("workers must be at least 1");
  }
  config.validate();
  ExperimentResult result;
  result.data = load_dataset(config);
  result.runs.resize(config.R);

  std::vector<std::exception_ptr> errors(config.R);
  std::atomic<std::size_t> next{0};
  const auto work = [&] {
    for (std::size_t r = next++; r < config.R; r = next++) {
      try {
        result.runs[r] = run_replication(config, result.data, r);
      } catch (...) {
        errors[r] = std::current_exception();
      }
    }
  };
  const std::size_t threads = std::clamp<std::size_t>(workers, 1, config.R);
  if (threads == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t i = 0; i < threads; ++i) {
      pool.emplace_back(work);
    }
  }
  // Report the failure of the lowest replication index, whatever finished first.
  for (const auto& error : errors) {
    if (error) {
      std::rethrow_exception(error);
    }
  }
  result.report = report_json(config, result.data, result.runs);
  return result;
}

void write_trace_csv(std::ostream& out, std::size_t replication, const diagnostics::DiagnosticTrace& trace) {
  trace.validate();
  out << kTraceHeader << '\n';
  const bool mixture = !trace.distinct_suffstats.empty();
  const bool functional = !trace.path_functional.empty();
  for (std::size_t t = 0; t < trace.size(); ++t) {
    out << replication << ',' << (t + 1) << ',' << format_double(trace.ess[t]) << ','
        << format_double(trace.log_evidence_increment[t]) << ',' << trace.distinct_ancestors_from_1[t]
        << ',';
    if (mixture) {
      out << trace.distinct_suffstats[t];
    }
    out << ',';
    if (functional) {
      out << format_double(trace.path_functional[t]);
    }
    out << '\n';
  }
}

void write_json_file(const std::filesystem::path& path, const json& doc) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot open " + path.string() + " for writing");
  }
  out << doc.dump(2) << '\n';
  if (!out) {
    throw IoError("failed writing " + path.string());
  }
}

ExperimentResult run_experiment(const ExperimentConfig& config, std::size_t workers) {
  const std::filesystem::path traces_dir = config.output_dir / "traces";
  std::error_code ec;
  std::filesystem::create_directories(traces_dir, ec);
  if (ec) {
    throw IoError("cannot create output directory " + traces_dir.string() + ": " + ec.message());
  }

  ExperimentResult result = run_replications(config, workers);

  models::write_dataset_csv(config.output_dir / "dataset.csv", result.data);
  for (std::size_t r = 0; r < result.runs.size(); ++r) {
    const auto path = traces_dir / trace_file_name(r);
    std::ofstream out(path, std::ios::binary);
    if (!out) {
      throw IoError("cannot open " + path.string() + " for writing");
    }
    write_trace_csv(out, r, result.runs[r].trace);
    if (!out) {
      throw IoError("failed writing " + path.string());
    }
  }
  write_json_file(config.output_dir / "report.json", result.report);
  return result;
}

}  // namespace plsmc::harness
