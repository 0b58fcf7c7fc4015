//
// Copyright 2026 The adasub Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "adasub/cli/config.h"

#include <fstream>
#include <set>
#include <sstream>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "adasub/divergence/suites.h"
#include "json.hpp"
#include "yaml-cpp/yaml.h"

namespace adasub::cli {
namespace {

using Keys = std::set<std::string>;

absl::Status Unknown(const std::string& where, const std::string& key,
                     const Keys& allowed) {
  return absl::InvalidArgumentError(absl::StrCat(
      "unknown key '", where.empty() ? key : where + "." + key, "' (allowed: ",
      absl::StrJoin(allowed, ", "), ")"));
}

absl::Status CheckKeys(const YAML::Node& node, const std::string& where,
                       const Keys& allowed) {
  if (!node.IsMap()) {
    return absl::InvalidArgumentError(
        absl::StrCat("'", where.empty() ? "<document>" : where, "' must be a mapping"));
  }
  for (const auto& entry : node) {
    const std::string key = entry.first.as<std::string>();
    if (!allowed.contains(key)) return Unknown(where, key, allowed);
  }
  return absl::OkStatus();
}

std::string Path(const std::string& where, const std::string& key) {
  return where.empty() ? key : where + "." + key;
}

template <typename T>
absl::Status Read(const YAML::Node& parent, const std::string& where,
                  const std::string& key, T& out) {
  const YAML::Node node = parent[key];
  if (!node) return absl::OkStatus();
  try {
    out = node.as<T>();
  } catch (const YAML::Exception&) {
    return absl::InvalidArgumentError(
        absl::StrCat("'", Path(where, key), "' has the wrong type"));
  }
  return absl::OkStatus();
}

absl::Status ReadNumberMap(const YAML::Node& node, const std::string& where,
                           std::map<std::string, double>& out) {
  if (!node) return absl::OkStatus();
  if (!node.IsMap()) {
    return absl::InvalidArgumentError(absl::StrCat("'", where, "' must be a mapping"));
  }
  for (const auto& entry : node) {
    const std::string key = entry.first.as<std::string>();
    try {
      out[key] = entry.second.as<double>();
    } catch (const YAML::Exception&) {
      return absl::InvalidArgumentError(
          absl::StrCat("'", Path(where, key), "' must be a number"));
    }
  }
  return absl::OkStatus();
}

#define ADASUB_RETURN_IF_ERROR(expr)            \
  do {                                          \
    if (absl::Status s_ = (expr); !s_.ok()) {   \
      return s_;                                \
    }                                           \
  } while (false)

absl::Status ParseMechanism(const YAML::Node& node, MechanismSpec& spec) {
  if (!node) return absl::InvalidArgumentError("missing key 'mechanism'");
  ADASUB_RETURN_IF_ERROR(CheckKeys(
      node, "mechanism",
      {"name", "epsilon", "k", "c_epsilon", "c_k", "c_m", "median_k", "add_noise",
       "median_mass", "sample_value_draws", "budget"}));
  std::string name;
  ADASUB_RETURN_IF_ERROR(Read(node, "mechanism", "name", name));
  absl::StatusOr<MechanismKind> kind = ParseMechanismKind(name);
  if (!kind.ok()) {
    return absl::InvalidArgumentError(
        absl::StrCat("mechanism.name: ", kind.status().message()));
  }
  spec.kind = *kind;
  ADASUB_RETURN_IF_ERROR(Read(node, "mechanism", "epsilon", spec.epsilon));
  ADASUB_RETURN_IF_ERROR(Read(node, "mechanism", "k", spec.k));
  ADASUB_RETURN_IF_ERROR(Read(node, "mechanism", "c_epsilon", spec.sq_constants.c_epsilon));
  ADASUB_RETURN_IF_ERROR(Read(node, "mechanism", "c_k", spec.sq_constants.c_k));
  ADASUB_RETURN_IF_ERROR(Read(node, "mechanism", "c_m", spec.median_constants.c_m));
  ADASUB_RETURN_IF_ERROR(Read(node, "mechanism", "median_k", spec.median_k));
  ADASUB_RETURN_IF_ERROR(Read(node, "mechanism", "add_noise", spec.add_noise));
  ADASUB_RETURN_IF_ERROR(Read(node, "mechanism", "median_mass", spec.median_mass));
  ADASUB_RETURN_IF_ERROR(
      Read(node, "mechanism", "sample_value_draws", spec.sample_value_draws));
  if (spec.k < 0 || spec.median_k < 0 || spec.sample_value_draws < 0) {
    return absl::InvalidArgumentError("mechanism: k, median_k, sample_value_draws >= 0");
  }
  if (!(spec.median_mass > 0.0 && spec.median_mass <= 0.5)) {
    return absl::InvalidArgumentError("mechanism.median_mass must lie in (0, 0.5]");
  }
  if (const YAML::Node budget = node["budget"]) {
    ADASUB_RETURN_IF_ERROR(CheckKeys(budget, "mechanism.budget", {"mode", "limit"}));
    std::string mode = "expectation";
    ADASUB_RETURN_IF_ERROR(Read(budget, "mechanism.budget", "mode", mode));
    if (mode == "expectation") {
      spec.budget_mode = BudgetMode::kExpectation;
    } else if (mode == "almost_sure") {
      spec.budget_mode = BudgetMode::kAlmostSure;
    } else {
      return absl::InvalidArgumentError(absl::StrCat(
          "mechanism.budget.mode: unknown mode '", mode, "' (expectation, almost_sure)"));
    }
    ADASUB_RETURN_IF_ERROR(Read(budget, "mechanism.budget", "limit", spec.budget));
    if (spec.budget_mode == BudgetMode::kAlmostSure && !(spec.budget >= 0.0)) {
      return absl::InvalidArgumentError("mechanism.budget.limit must be >= 0");
    }
  }
  return absl::OkStatus();
}

absl::Status ParseAnalyst(const YAML::Node& node, AnalystSpec& spec) {
  if (!node) return absl::InvalidArgumentError("missing key 'analyst'");
  ADASUB_RETURN_IF_ERROR(
      CheckKeys(node, "analyst", {"name", "T", "tau", "delta", "queries", "params"}));
  ADASUB_RETURN_IF_ERROR(Read(node, "analyst", "name", spec.name));
  static const Keys kNames = {"fixed", "random_correlation", "median_drift"};
  if (!kNames.contains(spec.name)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "analyst.name: unknown analyst '", spec.name, "' (", absl::StrJoin(kNames, ", "),
        ")"));
  }
  ADASUB_RETURN_IF_ERROR(Read(node, "analyst", "T", spec.rounds));
  ADASUB_RETURN_IF_ERROR(Read(node, "analyst", "tau", spec.tau));
  ADASUB_RETURN_IF_ERROR(Read(node, "analyst", "delta", spec.delta));
  ADASUB_RETURN_IF_ERROR(Read(node, "analyst", "queries", spec.queries));
  return ReadNumberMap(node["params"], "analyst.params", spec.params);
}

Keys SummaryFields() {
  const nlohmann::ordered_json j = nlohmann::ordered_json::parse(SummaryJson({}));
  Keys keys;
  for (const auto& [key, value] : j.items()) keys.insert(key);
  return keys;
}

absl::Status ParseAssertions(const YAML::Node& node, std::vector<Assertion>& out) {
  if (!node) return absl::OkStatus();
  if (!node.IsMap()) return absl::InvalidArgumentError("'assertions' must be a mapping");
  const Keys fields = SummaryFields();
  for (const auto& entry : node) {
    const std::string key = entry.first.as<std::string>();
    Assertion a;
    if (key.starts_with("min_")) {
      a.is_min = true;
      a.field = key.substr(4);
    } else if (key.starts_with("max_")) {
      a.is_min = false;
      a.field = key.substr(4);
    }
    if (!fields.contains(a.field)) {
      return absl::InvalidArgumentError(absl::StrCat(
          "unknown key 'assertions.", key, "' (min_<field> or max_<field> with field in ",
          absl::StrJoin(fields, ", "), ")"));
    }
    try {
      a.bound = entry.second.as<double>();
    } catch (const YAML::Exception&) {
      return absl::InvalidArgumentError(
          absl::StrCat("'assertions.", key, "' must be a number"));
    }
    out.push_back(a);
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<RunConfig> ParseRunConfig(const std::string& text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    return absl::InvalidArgumentError(absl::StrCat("config does not parse: ", e.what()));
  }
  if (!root || root.IsNull()) return absl::InvalidArgumentError("config is empty");
  RunConfig config;
  ExperimentConfig& x = config.experiment;
  ADASUB_RETURN_IF_ERROR(CheckKeys(root, "",
                                   {"seed", "trials", "threads", "n", "n_factor",
                                    "population", "mechanism", "analyst", "output",
                                    "assertions", "verify"}));
  ADASUB_RETURN_IF_ERROR(Read(root, "", "seed", x.seed));
  ADASUB_RETURN_IF_ERROR(Read(root, "", "trials", x.trials));
  ADASUB_RETURN_IF_ERROR(Read(root, "", "threads", x.threads));
  ADASUB_RETURN_IF_ERROR(Read(root, "", "n", x.n));
  ADASUB_RETURN_IF_ERROR(Read(root, "", "n_factor", x.n_factor));
  ADASUB_RETURN_IF_ERROR(Read(root, "", "output", config.output));
  ADASUB_RETURN_IF_ERROR(Read(root, "", "verify", config.verify));
  for (const std::string& suite : config.verify) {
    const auto& names = SuiteNames();
    if (std::find(names.begin(), names.end(), suite) == names.end()) {
      return absl::InvalidArgumentError(absl::StrCat("verify: unknown suite '", suite,
                                                     "' (", absl::StrJoin(names, ", "),
                                                     ")"));
    }
  }

  const YAML::Node population = root["population"];
  if (!population) return absl::InvalidArgumentError("missing key 'population'");
  ADASUB_RETURN_IF_ERROR(CheckKeys(population, "population", {"name", "params"}));
  ADASUB_RETURN_IF_ERROR(Read(population, "population", "name", x.population));
  ADASUB_RETURN_IF_ERROR(
      ReadNumberMap(population["params"], "population.params", x.population_params));
  ADASUB_RETURN_IF_ERROR(ParseMechanism(root["mechanism"], x.mechanism));
  ADASUB_RETURN_IF_ERROR(ParseAnalyst(root["analyst"], x.analyst));
  ADASUB_RETURN_IF_ERROR(ParseAssertions(root["assertions"], config.assertions));
  if (x.threads < 0) return absl::InvalidArgumentError("'threads' must be >= 0");

  // Resolution covers the remaining schema: names, parameter keys, ranges.
  absl::StatusOr<ResolvedParameters> resolved = ResolveParameters(x);
  if (!resolved.ok()) return resolved.status();
  return config;
}

absl::StatusOr<RunConfig> LoadRunConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot read config '", path, "'"));
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseRunConfig(buffer.str());
}

std::vector<std::string> FailedAssertions(const std::vector<Assertion>& assertions,
                                          const ExperimentSummary& summary) {
  const nlohmann::ordered_json j = nlohmann::ordered_json::parse(SummaryJson(summary));
  std::vector<std::string> failed;
  for (const Assertion& a : assertions) {
    const double value = j.at(a.field).get<double>();
    const bool ok = a.is_min ? value >= a.bound : value <= a.bound;
    if (!ok) {
      failed.push_back(absl::StrCat(a.field, " = ", FormatNumber(value),
                                    a.is_min ? " < min " : " > max ",
                                    FormatNumber(a.bound)));
    }
  }
  return failed;
}

}  // namespace adasub::cli
