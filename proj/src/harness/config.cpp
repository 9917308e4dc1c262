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

#include "plsmc/harness/config.hpp"

#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <set>
#include <string>

#include "plsmc/error.hpp"
#include "plsmc/math.hpp"

namespace plsmc::harness {

using nlohmann::json;

namespace {

void reject_unknown_keys(const json& object, std::initializer_list<const char*> allowed,
                         const std::string& where) {
  if (!object.is_object()) {
    throw ValidationError(where + " must be a JSON object");
  }
  const std::set<std::string> known(allowed.begin(), allowed.end());
  for (const auto& item : object.items()) {
    if (!known.contains(item.key())) {
      throw ValidationError("unknown key '" + item.key() + "' in " + where);
    }
  }
}

const json& require(const json& object, const char* key, const std::string& where) {
  if (!object.contains(key)) {
    throw ValidationError(where + " is missing required key '" + key + "'");
  }
  return object.at(key);
}

double number(const json& value, const std::string& what) {
  if (!value.is_number()) {
    throw ValidationError(what + " must be a number");
  }
  return value.get<double>();
}

double number_or(const json& object, const char* key, double fallback, const std::string& where) {
  return object.contains(key) ? number(object.at(key), where + "." + key) : fallback;
}

std::uint64_t unsigned_integer(const json& value, const std::string& what) {
  if (value.is_number_unsigned()) {
    return value.get<std::uint64_t>();
  }
  if (value.is_number_integer() && value.get<std::int64_t>() >= 0) {
    return static_cast<std::uint64_t>(value.get<std::int64_t>());
  }
  throw ValidationError(what + " must be a nonnegative integer");
}

std::vector<double> number_array(const json& value, const std::string& what) {
  if (!value.is_array()) {
    throw ValidationError(what + " must be an array of numbers");
  }
  std::vector<double> out;
  for (const auto& v : value) {
    out.push_back(number(v, what + "[]"));
  }
  return out;
}

models::Variance parse_variance(const json& value, const std::string& what) {
  if (value.is_number()) {
    return value.get<double>();
  }
  reject_unknown_keys(value, {"shape", "scale"}, what);
  return models::InverseGammaPrior{number(require(value, "shape", what), what + ".shape"),
                                   number(require(value, "scale", what), what + ".scale")};
}

json variance_json(const models::Variance& v) {
  if (const double* fixed = std::get_if<double>(&v)) {
    return *fixed;
  }
  const auto& prior = std::get<models::InverseGammaPrior>(v);
  return json{{"shape", prior.shape}, {"scale", prior.scale}};
}

ModelSpec parse_model(const json& doc) {
  const std::string where = "model";
  const std::string family = require(doc, "family", where).get<std::string>();
  if (family == "mixture") {
    reject_unknown_keys(doc, {"family", "K", "dirichlet_weight", "m0", "kappa0", "a0", "b0"}, where);
    models::MixtureModelSpec spec;
    if (doc.contains("K")) {
      spec.K = unsigned_integer(doc.at("K"), "model.K");
    }
    spec.dirichlet_weight = number_or(doc, "dirichlet_weight", spec.dirichlet_weight, where);
    spec.m0 = number_or(doc, "m0", spec.m0, where);
    spec.kappa0 = number_or(doc, "kappa0", spec.kappa0, where);
    spec.a0 = number_or(doc, "a0", spec.a0, where);
    spec.b0 = number_or(doc, "b0", spec.b0, where);
    return spec;
  }
  if (family == "local_level") {
    reject_unknown_keys(doc, {"family", "obs_var", "state_var", "init_mean", "init_var"}, where);
    models::LocalLevelSpec spec;
    if (doc.contains("obs_var")) {
      spec.obs_var = parse_variance(doc.at("obs_var"), "model.obs_var");
    }
    if (doc.contains("state_var")) {
      spec.state_var = parse_variance(doc.at("state_var"), "model.state_var");
    }
    spec.init_mean = number_or(doc, "init_mean", spec.init_mean, where);
    spec.init_var = number_or(doc, "init_var", spec.init_var, where);
    return spec;
  }
  throw ValidationError("model.family must be 'mixture' or 'local_level', got '" + family + "'");
}

DatasetSource parse_dataset(const json& doc, const std::filesystem::path& base_dir) {
  reject_unknown_keys(doc, {"values", "path", "simulate"}, "dataset");
  if (doc.size() != 1) {
    throw ValidationError("dataset needs exactly one of 'values', 'path', 'simulate'");
  }
  DatasetSource source;
  if (doc.contains("values")) {
    source.kind = DatasetSource::Kind::inline_values;
    source.values = number_array(doc.at("values"), "dataset.values");
  } else if (doc.contains("path")) {
    source.kind = DatasetSource::Kind::path;
    std::filesystem::path path = doc.at("path").get<std::string>();
    source.path = path.is_relative() && !base_dir.empty() ? base_dir / path : path;
  } else {
    source.kind = DatasetSource::Kind::simulate;
    const json& sim = doc.at("simulate");
    reject_unknown_keys(sim, {"seed", "weights", "means", "variances"}, "dataset.simulate");
    source.simulate_seed = unsigned_integer(require(sim, "seed", "dataset.simulate"), "dataset.simulate.seed");
    const bool any = sim.contains("weights") || sim.contains("means") || sim.contains("variances");
    if (any) {
      models::MixtureParams params;
      params.weights = number_array(require(sim, "weights", "dataset.simulate"), "dataset.simulate.weights");
      params.means = number_array(require(sim, "means", "dataset.simulate"), "dataset.simulate.means");
      params.variances =
          number_array(require(sim, "variances", "dataset.simulate"), "dataset.simulate.variances");
      source.params = std::move(params);
    }
  }
  return source;
}

filters::FilterOptions parse_options(const json& doc, filters::FilterKind kind) {
  filters::FilterOptions options = filters::default_options(kind);
  if (doc.contains("resample")) {
    const json& r = doc.at("resample");
    reject_unknown_keys(r, {"scheme", "trigger", "threshold"}, "resample");
    if (r.contains("scheme")) {
      options.scheme = smc::parse_resample_scheme(r.at("scheme").get<std::string>());
    }
    if (r.contains("trigger")) {
      const std::string trigger = r.at("trigger").get<std::string>();
      if (trigger == "always") {
        options.trigger.policy = filters::ResampleTrigger::Policy::always;
      } else if (trigger == "ess") {
        options.trigger.policy = filters::ResampleTrigger::Policy::ess;
      } else {
        throw ValidationError("resample.trigger must be 'always' or 'ess', got '" + trigger + "'");
      }
    }
    options.trigger.threshold = number_or(r, "threshold", options.trigger.threshold, "resample");
  }
  if (doc.contains("functional")) {
    const std::string f = doc.at("functional").get<std::string>();
    if (f == "sum") {
      options.functional = filters::PathFunctional::state_sum;
    } else if (f == "sum_sq") {
      options.functional = filters::PathFunctional::state_sum_of_squares;
    } else {
      throw ValidationError("functional must be 'sum' or 'sum_sq', got '" + f + "'");
    }
  }
  return options;
}

}  // namespace

void ExperimentConfig::validate() const {
  std::visit([](const auto& spec) { spec.validate(); }, model);
  if (N < 2) {
    throw ValidationError("N must be at least 2");
  }
  if (R < 1) {
    throw ValidationError("R must be at least 1");
  }
  if (T < 1) {
    throw ValidationError("T must be at least 1");
  }
  if (!(options.trigger.threshold > 0.0 && options.trigger.threshold <= 1.0)) {
    throw ValidationError("resample.threshold must lie in (0, 1]");
  }
  if (is_mixture()) {
    if (algorithm == filters::FilterKind::bootstrap) {
      throw ValidationError("algorithm 'bootstrap' runs on the local_level model only");
    }
    if (dataset.kind == DatasetSource::Kind::simulate) {
      if (!dataset.params) {
        throw ValidationError("mixture simulation needs weights, means and variances");
      }
      dataset.params->validate();
      if (dataset.params->size() != std::get<models::MixtureModelSpec>(model).K) {
        throw ValidationError("dataset.simulate parameters must have K components");
      }
    }
    if (gibbs.burn_in >= gibbs.iterations) {
      throw ValidationError("gibbs.burn_in must be smaller than gibbs.iterations");
    }
  } else {
    if (algorithm != filters::FilterKind::bootstrap) {
      throw ValidationError("algorithm '" + std::string(filters::to_string(algorithm)) +
                            "' runs on the mixture model only");
    }
    if (!std::get<models::LocalLevelSpec>(model).has_fixed_variances()) {
      throw ValidationError("the bootstrap filter needs fixed obs_var and state_var");
    }
    if (dataset.kind == DatasetSource::Kind::simulate && dataset.params) {
      throw ValidationError("local_level simulation takes only a seed");
    }
  }
}

ExperimentConfig parse_config(const json& doc, const std::filesystem::path& base_dir) {
  reject_unknown_keys(doc,
                      {"model", "dataset", "algorithm", "baselines", "gibbs", "N", "T", "R",
                       "master_seed", "resample", "functional", "output_dir"},
                      "config");
  ExperimentConfig config;
  try {
    config.model = parse_model(require(doc, "model", "config"));
    config.dataset = parse_dataset(require(doc, "dataset", "config"), base_dir);
    config.algorithm = filters::parse_filter_kind(require(doc, "algorithm", "config").get<std::string>());
    if (doc.contains("baselines")) {
      if (!doc.at("baselines").is_boolean()) {
        throw ValidationError("baselines must be true or false");
      }
      config.baselines = doc.at("baselines").get<bool>();
    }
    if (doc.contains("gibbs")) {
      const json& g = doc.at("gibbs");
      reject_unknown_keys(g, {"iterations", "burn_in"}, "gibbs");
      if (g.contains("iterations")) {
        config.gibbs.iterations = unsigned_integer(g.at("iterations"), "gibbs.iterations");
      }
      if (g.contains("burn_in")) {
        config.gibbs.burn_in = unsigned_integer(g.at("burn_in"), "gibbs.burn_in");
      }
    }
    config.N = unsigned_integer(require(doc, "N", "config"), "N");
    config.T = unsigned_integer(require(doc, "T", "config"), "T");
    config.R = unsigned_integer(require(doc, "R", "config"), "R");
    config.master_seed = unsigned_integer(require(doc, "master_seed", "config"), "master_seed");
    config.options = parse_options(doc, config.algorithm);
    if (doc.contains("output_dir")) {
      std::filesystem::path out = doc.at("output_dir").get<std::string>();
      config.output_dir = out.is_relative() && !base_dir.empty() ? base_dir / out : out;
    }
  } catch (const json::exception& e) {
    throw ValidationError(std::string("config: ") + e.what());
  }
  config.validate();
  return config;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open config " + path.string());
  }
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError("config " + path.string() + " is not valid JSON: " + e.what());
  }
  return parse_config(doc, path.parent_path());
}

json canonical_json(const ExperimentConfig& config) {
  json doc;
  if (config.is_mixture()) {
    const auto& spec = std::get<models::MixtureModelSpec>(config.model);
    doc["model"] = {{"family", "mixture"}, {"K", spec.K},       {"dirichlet_weight", spec.dirichlet_weight},
                    {"m0", spec.m0},       {"kappa0", spec.kappa0}, {"a0", spec.a0},
                    {"b0", spec.b0}};
  } else {
    const auto& spec = std::get<models::LocalLevelSpec>(config.model);
    doc["model"] = {{"family", "local_level"},
                    {"obs_var", variance_json(spec.obs_var)},
                    {"state_var", variance_json(spec.state_var)},
                    {"init_mean", spec.init_mean},
                    {"init_var", spec.init_var}};
  }
  switch (config.dataset.kind) {
    case DatasetSource::Kind::inline_values:
      doc["dataset"] = {{"values", config.dataset.values}};
      break;
    case DatasetSource::Kind::path:
      doc["dataset"] = {{"path", config.dataset.path.generic_string()}};
      break;
    case DatasetSource::Kind::simulate: {
      json sim = {{"seed", config.dataset.simulate_seed}};
      if (config.dataset.params) {
        sim["weights"] = config.dataset.params->weights;
        sim["means"] = config.dataset.params->means;
        sim["variances"] = config.dataset.params->variances;
      }
      doc["dataset"] = {{"simulate", sim}};
      break;
    }
  }
  doc["algorithm"] = std::string(filters::to_string(config.algorithm));
  doc["baselines"] = config.baselines;
  if (config.baselines && config.is_mixture()) {
    doc["gibbs"] = {{"iterations", config.gibbs.iterations}, {"burn_in", config.gibbs.burn_in}};
  }
  doc["N"] = config.N;
  doc["T"] = config.T;
  doc["R"] = config.R;
  doc["master_seed"] = config.master_seed;
  doc["resample"] = {
      {"scheme", std::string(smc::to_string(config.options.scheme))},
      {"trigger", config.options.trigger.policy == filters::ResampleTrigger::Policy::always ? "always" : "ess"},
      {"threshold", config.options.trigger.threshold}};
  doc["functional"] = config.options.functional == filters::PathFunctional::state_sum ? "sum" : "sum_sq";
  return doc;
}

std::string config_digest(const ExperimentConfig& config) {
  Fnv1a hash;
  hash.update(std::string_view(canonical_json(config).dump()));
  char buffer[17];
  std::snprintf(buffer, sizeof buffer, "%016llx", static_cast<unsigned long long>(hash.digest()));
  return buffer;
}

}  // namespace plsmc::harness
