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

#include <doctest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "plsmc/error.hpp"
#include "plsmc/harness/config.hpp"
#include "plsmc/harness/experiment.hpp"
#include "plsmc/harness/seed.hpp"
#include "plsmc/models/mixture.hpp"

using namespace plsmc;
using namespace plsmc::harness;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("plsmc_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

json mixture_doc() {
  return json::parse(R"({
    "model": {"family": "mixture", "K": 2},
    "dataset": {"values": [-1.2, 0.4, 2.5, 3.1, -0.3]},
    "algorithm": "particle_learning",
    "N": 200, "T": 5, "R": 6, "master_seed": 42
  })");
}

json level_doc() {
  return json::parse(R"({
    "model": {"family": "local_level", "obs_var": 1.0, "state_var": 0.5, "init_mean": 0.0, "init_var": 1.0},
    "dataset": {"simulate": {"seed": 3}},
    "algorithm": "bootstrap",
    "baselines": true,
    "N": 300, "T": 40, "R": 5, "master_seed": 7,
    "resample": {"scheme": "stratified", "trigger": "ess", "threshold": 0.5}
  })");
}

std::vector<std::pair<std::string, std::string>> directory_bytes(const fs::path& dir) {
  std::vector<std::pair<std::string, std::string>> files;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (entry.is_regular_file()) files.emplace_back(fs::relative(entry.path(), dir).string(), slurp(entry.path()));
  }
  std::sort(files.begin(), files.end());
  return files;
}

int cli(const std::string& args) {
  const std::string command = std::string(PLSMC_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(command.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path write_config(const fs::path& dir, const json& doc) {
  const fs::path path = dir / "config.json";
  std::ofstream(path) << doc.dump(2);
  return path;
}

}  // namespace

TEST_SUITE("harness.seed") {
  TEST_CASE("deterministic") {
    CHECK(derive_seed(123, 4) == derive_seed(123, 4));
    static_assert(derive_seed(1, 2) == derive_seed(1, 2));
  }

  TEST_CASE("neighbouring indices never collide") {
    std::mt19937_64 rng(1);
    for (int i = 0; i < 10000; ++i) {
      const auto s = rng();
      REQUIRE(derive_seed(s, 0) != derive_seed(s, 1));
    }
  }

  TEST_CASE("distinct masters give distinct seeds") {
    std::mt19937_64 rng(2);
    for (int i = 0; i < 10000; ++i) {
      const auto s = rng();
      auto s2 = rng();
      if (s2 == s) ++s2;
      const auto idx = rng() % 1000;
      REQUIRE(derive_seed(s, idx) != derive_seed(s2, idx));
    }
  }

  TEST_CASE("a million indices under one master are all distinct") {
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(1 << 21);
    for (std::uint64_t i = 0; i < 1000000; ++i) seen.insert(derive_seed(0xdeadbeef, i));
    CHECK(seen.size() == 1000000);
  }
}

TEST_SUITE("harness.config") {
  TEST_CASE("parses both model families") {
    const auto m = parse_config(mixture_doc());
    CHECK(m.is_mixture());
    CHECK(m.N == 200);
    CHECK(m.options.trigger.policy == filters::ResampleTrigger::Policy::always);
    const auto l = parse_config(level_doc());
    CHECK_FALSE(l.is_mixture());
    CHECK(l.options.scheme == smc::ResampleScheme::stratified);
    CHECK(l.baselines);
  }

  TEST_CASE("rejects invalid documents") {
    auto check_rejects = [](json doc) { CHECK_THROWS_AS(parse_config(doc), ValidationError); };
    auto d = mixture_doc();
    d["unexpected"] = 1;
    check_rejects(d);
    d = mixture_doc();
    d["N"] = 1;
    check_rejects(d);
    d = mixture_doc();
    d["R"] = 0;
    check_rejects(d);
    d = mixture_doc();
    d["T"] = 0;
    check_rejects(d);
    d = mixture_doc();
    d["dataset"]["simulate"] = {{"seed", 1}};
    check_rejects(d);
    d = mixture_doc();
    d["algorithm"] = "bootstrap";
    check_rejects(d);
    d = level_doc();
    d["algorithm"] = "storvik";
    check_rejects(d);
    d = mixture_doc();
    d["resample"] = {{"scheme", "roulette"}};
    check_rejects(d);
    d = mixture_doc();
    d["model"]["K"] = 1;
    check_rejects(d);
    d = mixture_doc();
    d["N"] = "many";
    check_rejects(d);
    d = mixture_doc();
    d["dataset"] = json::object();
    check_rejects(d);
    d = level_doc();
    d["model"]["obs_var"] = {{"shape", 2.0}, {"scale", 1.0}};
    check_rejects(d);
  }

  TEST_CASE("T longer than the dataset is rejected when loading") {
    auto d = mixture_doc();
    d["T"] = 6;
    CHECK_THROWS_AS(load_dataset(parse_config(d)), ValidationError);
  }

  TEST_CASE("files: missing is I/O, malformed is validation") {
    const auto dir = scratch_dir("config_files");
    CHECK_THROWS_AS(load_config(dir / "absent.json"), IoError);
    std::ofstream(dir / "bad.json") << "{ not json";
    CHECK_THROWS_AS(load_config(dir / "bad.json"), ValidationError);
  }

  TEST_CASE("dataset paths resolve against the config directory") {
    const auto dir = scratch_dir("config_relative");
    models::write_dataset_csv(dir / "data.csv", models::Dataset{{0.5, 1.5, -0.5}, {}});
    auto d = mixture_doc();
    d["dataset"] = {{"path", "data.csv"}};
    d["T"] = 3;
    const auto config = load_config(write_config(dir, d));
    CHECK(load_dataset(config).observations == std::vector<double>{0.5, 1.5, -0.5});
  }

  TEST_CASE("digest ignores output_dir and tracks everything else") {
    auto a = parse_config(mixture_doc());
    auto b = a;
    b.output_dir = "elsewhere";
    CHECK(config_digest(a) == config_digest(b));
    CHECK(config_digest(a).size() == 16);
    b.master_seed = 43;
    CHECK(config_digest(a) != config_digest(b));
    CHECK(parse_config(canonical_json(a)).N == a.N);
    CHECK(config_digest(parse_config(canonical_json(a))) == config_digest(a));
  }
}

TEST_SUITE("harness.experiment") {
  TEST_CASE("smallest run: R=1, N=2, T=1") {
    auto d = mixture_doc();
    d["N"] = 2;
    d["T"] = 1;
    d["R"] = 1;
    auto config = parse_config(d);
    config.output_dir = scratch_dir("smallest");
    const auto result = run_experiment(config, 1);
    const std::string csv = slurp(config.output_dir / "traces" / "rep_0000.csv");
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);
    CHECK(csv.rfind(std::string(kTraceHeader) + "\n", 0) == 0);
    const double exact = models::mixture_predictive_logdensity(-1.2, models::MixtureSuffStats::empty(2), {});
    CHECK(result.runs[0].log_evidence == doctest::Approx(exact).epsilon(1e-12));
    const auto report = json::parse(slurp(config.output_dir / "report.json"));
    CHECK(report.at("R") == 1);
    CHECK(report.at("log_evidence").at("per_rep").size() == 1);
  }

  TEST_CASE("mixture report layout and enumeration oracle") {
    auto config = parse_config(mixture_doc());
    config.output_dir = scratch_dir("mixture_report");
    run_experiment(config, 2);
    const auto report = json::parse(slurp(config.output_dir / "report.json"));
    for (const char* key : {"config_digest", "R", "seeds", "log_evidence", "curves", "oracle", "notices"}) {
      CHECK(report.contains(key));
    }
    CHECK(report.at("config_digest") == config_digest(config));
    CHECK(report.at("oracle").at("name") == "enumeration");
    CHECK(report.at("oracle").at("value").get<double>() ==
          doctest::Approx(models::enumerate_mixture_log_evidence({}, load_dataset(config))).epsilon(1e-14));
    CHECK(report.at("curves").contains("distinct_suffstats"));
    CHECK(report.at("seeds").at(3).get<std::uint64_t>() == derive_seed(42, 3));
    for (std::size_t r = 0; r < 6; ++r) {
      std::ostringstream name;
      name << "rep_000" << r << ".csv";
      CHECK(fs::exists(config.output_dir / "traces" / name.str()));
    }
    CHECK(fs::exists(config.output_dir / "dataset.csv"));
  }

  TEST_CASE("enumeration guard becomes a notice") {
    auto d = mixture_doc();
    std::vector<double> values(30);
    for (std::size_t i = 0; i < values.size(); ++i) values[i] = static_cast<double>(i % 5) - 2.0;
    d["dataset"] = {{"values", values}};
    d["T"] = 30;
    d["R"] = 2;
    const auto config = parse_config(d);
    const auto oracles = compute_oracles(config, load_dataset(config));
    CHECK(oracles.at("oracle").is_null());
    REQUIRE(oracles.at("notices").size() == 1);
    CHECK(oracles.at("notices")[0].get<std::string>().find("10000000") != std::string::npos);
  }

  TEST_CASE("local level report carries Kalman oracle, target and baselines") {
    auto config = parse_config(level_doc());
    config.output_dir = scratch_dir("level_report");
    const auto result = run_experiment(config, 3);
    const auto& report = result.report;
    CHECK(report.at("oracle").at("name") == "kalman");
    CHECK(report.contains("path_functional_target"));
    CHECK(report.contains("oracle_within_3se"));
    CHECK(report.at("curves").contains("path_functional"));
    CHECK(report.contains("baselines"));
    const auto trace = slurp(config.output_dir / "traces" / "rep_0004.csv");
    CHECK(std::count(trace.begin(), trace.end(), '\n') == 41);
  }

  TEST_CASE("byte-identical outputs across repeats and worker counts") {
    for (const auto& doc : {mixture_doc(), level_doc()}) {
      auto config = parse_config(doc);
      config.output_dir = scratch_dir("det_a");
      run_experiment(config, 1);
      const auto a = directory_bytes(config.output_dir);
      config.output_dir = scratch_dir("det_b");
      run_experiment(config, 8);
      const auto b = directory_bytes(config.output_dir);
      config.output_dir = scratch_dir("det_c");
      run_experiment(config, 1);
      CHECK(a == b);
      CHECK(a == directory_bytes(config.output_dir));
    }
  }

  TEST_CASE("workers beyond R and zero workers") {
    auto config = parse_config(mixture_doc());
    const auto a = run_replications(config, 64);
    const auto b = run_replications(config, 1);
    CHECK(a.report.dump() == b.report.dump());
    CHECK_THROWS_AS(run_replications(config, 0), ValidationError);
  }

  TEST_CASE("unwritable output is an I/O error") {
    const auto dir = scratch_dir("unwritable");
    std::ofstream(dir / "blocker") << "x";
    auto config = parse_config(mixture_doc());
    config.output_dir = dir / "blocker" / "out";
    CHECK_THROWS_AS(run_experiment(config, 1), IoError);
  }

  TEST_CASE("invalid traces are refused on write") {
    diagnostics::DiagnosticTrace trace;
    trace.N = 3;
    trace.ess = {3.0, 2.0};
    trace.log_evidence_increment = {0.0, 0.0};
    trace.distinct_ancestors_from_1 = {2, 3};
    std::ostringstream out;
    CHECK_THROWS_AS(write_trace_csv(out, 0, trace), ValidationError);
  }

  TEST_CASE("trace rows use empty cells for columns that do not apply") {
    diagnostics::DiagnosticTrace trace;
    trace.N = 4;
    trace.ess = {2.5};
    trace.log_evidence_increment = {-1.25};
    trace.distinct_ancestors_from_1 = {4};
    trace.distinct_suffstats = {3};
    std::ostringstream out;
    write_trace_csv(out, 7, trace);
    CHECK(out.str() == std::string(kTraceHeader) + "\n7,1,2.5,-1.25,4,3,\n");
  }
}

TEST_SUITE("harness.cli") {
  TEST_CASE("exit codes") {
    const auto dir = scratch_dir("cli");
    auto doc = mixture_doc();
    doc["output_dir"] = (dir / "out").string();
    const auto good = write_config(dir, doc);
    CHECK(cli("run --config " + good.string() + " --workers 2") == 0);
    CHECK(fs::exists(dir / "out" / "report.json"));
    CHECK(cli("run --config " + good.string() + " --output " + (dir / "seeded").string() + " --seed 9") == 0);
    CHECK(json::parse(slurp(dir / "seeded" / "report.json")).at("seeds")[0].get<std::uint64_t>() ==
          derive_seed(9, 0));
    CHECK(cli("oracle --config " + good.string()) == 0);
    CHECK(cli("simulate --config " + good.string() + " --output " + (dir / "sim").string()) == 0);
    CHECK(fs::exists(dir / "sim" / "dataset.csv"));

    // Validation failures.
    CHECK(cli("") == 1);
    CHECK(cli("frobnicate") == 1);
    CHECK(cli("run --config " + good.string() + " --workers 0") == 1);
    auto bad = doc;
    bad["N"] = 1;
    fs::create_directories(dir / "bad");
    CHECK(cli("run --config " + write_config(dir / "bad", bad).string()) == 1);

    // I/O failures.
    CHECK(cli("run --config " + (dir / "missing.json").string()) == 2);
    std::ofstream(dir / "blocker") << "x";
    CHECK(cli("run --config " + good.string() + " --output " + (dir / "blocker" / "out").string()) == 2);

    // Degeneracy: an observation whose likelihood underflows for every particle.
    auto dead = doc;
    dead["dataset"] = {{"values", {0.1, 1e300}}};
    dead["T"] = 2;
    fs::create_directories(dir / "dead");
    CHECK(cli("run --config " + write_config(dir / "dead", dead).string() + " --output " + (dir / "dead_out").string()) ==
          3);
  }

  TEST_CASE("oracle prints parseable JSON") {
    const auto dir = scratch_dir("cli_oracle");
    const auto config = write_config(dir, mixture_doc());
    const std::string out = (dir / "oracle.json").string();
    const int status = std::system((std::string(PLSMC_CLI_PATH) + " oracle --config " + config.string() + " > " + out).c_str());
    REQUIRE(WEXITSTATUS(status) == 0);
    const auto doc = json::parse(slurp(out));
    CHECK(doc.at("oracle").at("name") == "enumeration");
    CHECK(doc.contains("config_digest"));
  }
}
