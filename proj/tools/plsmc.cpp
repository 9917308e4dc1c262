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

// Command line front end:
//
//   plsmc run      --config <path> [--output <dir>] [--workers <n>] [--seed <override>]
//   plsmc oracle   --config <path>
//   plsmc simulate --config <path> [--output <dir>]
//
// Exit codes: 0 success, 1 validation error, 2 I/O error, 3 degeneracy abort.

#include <cstdint>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "plsmc/error.hpp"
#include "plsmc/harness/config.hpp"
#include "plsmc/harness/experiment.hpp"

namespace {

enum ExitCode : int { kSuccess = 0, kValidation = 1, kIo = 2, kDegeneracy = 3 };

struct Overrides {
  std::string config;
  std::optional<std::string> output;
  std::optional<std::uint64_t> seed;
  std::size_t workers = 1;
};

plsmc::harness::ExperimentConfig load(const Overrides& o) {
  auto config = plsmc::harness::load_config(o.config);
  if (o.output) {
    config.output_dir = *o.output;
  }
  if (o.seed) {
    config.master_seed = *o.seed;
  }
  return config;
}

int run(const Overrides& o) {
  const auto config = load(o);
  const auto result = plsmc::harness::run_experiment(config, o.workers);
  const auto& ev = result.report.at("log_evidence");
  std::cerr << "wrote " << result.runs.size() << " replications to " << config.output_dir.string()
            << "\nlog evidence mean " << ev.at("mean").dump() << " (se " << ev.at("se").dump() << ")";
  if (!result.report.at("oracle").is_null()) {
    std::cerr << ", oracle " << result.report.at("oracle").at("name").get<std::string>() << " "
              << result.report.at("oracle").at("value").dump();
  }
  std::cerr << '\n';
  return kSuccess;
}

int oracle(const Overrides& o) {
  const auto config = load(o);
  const auto data = plsmc::harness::load_dataset(config);
  auto doc = plsmc::harness::compute_oracles(config, data);
  doc["config_digest"] = plsmc::harness::config_digest(config);
  std::cout << doc.dump(2) << '\n';
  return kSuccess;
}

int simulate(const Overrides& o) {
  const auto config = load(o);
  const auto data = plsmc::harness::load_dataset(config);
  std::error_code ec;
  std::filesystem::create_directories(config.output_dir, ec);
  if (ec) {
    throw plsmc::IoError("cannot create " + config.output_dir.string() + ": " + ec.message());
  }
  const auto path = config.output_dir / "dataset.csv";
  plsmc::models::write_dataset_csv(path, data);
  std::cerr << "wrote " << data.size() << " observations to " << path.string() << '\n';
  return kSuccess;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Particle Learning and SMC degeneracy laboratory"};
  app.require_subcommand(1);

  Overrides overrides;
  auto* run_cmd = app.add_subcommand("run", "run R replications and write traces and a report");
  run_cmd->add_option("--config", overrides.config, "experiment JSON")->required();
  run_cmd->add_option("--output", overrides.output, "output directory (overrides output_dir)");
  run_cmd->add_option("--workers", overrides.workers, "replications run concurrently")
      ->check(CLI::PositiveNumber);
  run_cmd->add_option("--seed", overrides.seed, "master seed (overrides master_seed)");

  auto* oracle_cmd = app.add_subcommand("oracle", "print exact reference values as JSON");
  oracle_cmd->add_option("--config", overrides.config, "experiment JSON")->required();

  auto* simulate_cmd = app.add_subcommand("simulate", "write the configured dataset as CSV");
  simulate_cmd->add_option("--config", overrides.config, "experiment JSON")->required();
  simulate_cmd->add_option("--output", overrides.output, "output directory (overrides output_dir)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kSuccess : kValidation;
  }

  try {
    if (run_cmd->parsed()) {
      return run(overrides);
    }
    if (oracle_cmd->parsed()) {
      return oracle(overrides);
    }
    return simulate(overrides);
  } catch (const plsmc::IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kIo;
  } catch (const plsmc::DegeneracyError& e) {
    std::cerr << "degeneracy abort: " << e.what() << '\n';
    return kDegeneracy;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kValidation;
  }
}
