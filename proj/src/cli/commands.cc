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

#include "adasub/cli/commands.h"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <vector>

#include "CLI11.hpp"
#include "absl/strings/str_cat.h"
#include "adasub/cli/config.h"
#include "adasub/divergence/suites.h"
#include "adasub/harness/experiment.h"
#include "adasub/mechanisms/cost.h"

namespace adasub::cli {
namespace {

namespace fs = std::filesystem;

fs::path OutputPath(const std::string& config_path, const RunConfig& config,
                    const RunOverrides& overrides) {
  if (overrides.out) return *overrides.out;
  if (!config.output.empty()) return config.output;
  const char* dir = std::getenv(kOutputDirEnv);
  const fs::path base = dir != nullptr && *dir != '\0' ? fs::path(dir) : fs::path(".");
  return base / fs::path(config_path).stem().concat(".csv");
}

fs::path Sibling(const fs::path& csv, const std::string& suffix) {
  fs::path p = csv;
  p.replace_extension();
  return p.concat(suffix);
}

bool PrintSuite(const SuiteResult& r, std::ostream& out) {
  out << r.name << ": " << (r.passed ? "PASS" : "FAIL") << " (" << r.instances
      << " instances, " << r.failures << " failures)\n";
  for (const auto& [key, value] : r.stats) {
    out << "  " << key << " = " << FormatNumber(value) << '\n';
  }
  if (!r.counterexample.empty()) out << "  counterexample: " << r.counterexample << '\n';
  return r.passed;
}

}  // namespace

int CmdRun(const std::string& config_path, const RunOverrides& overrides,
           std::ostream& out, std::ostream& err) {
  absl::StatusOr<RunConfig> config = LoadRunConfig(config_path);
  if (!config.ok()) {
    err << "config error: " << config.status().message() << '\n';
    return kExitConfigError;
  }
  if (overrides.seed) config->experiment.seed = *overrides.seed;
  if (overrides.threads) config->experiment.threads = *overrides.threads;

  absl::StatusOr<ExperimentReport> report = RunExperiment(config->experiment);
  if (!report.ok()) {
    err << "run failed: " << report.status().message() << '\n';
    return absl::IsInvalidArgument(report.status()) ? kExitConfigError
                                                    : kExitRuntimeError;
  }

  const fs::path csv = OutputPath(config_path, *config, overrides);
  std::error_code ec;
  if (csv.has_parent_path()) fs::create_directories(csv.parent_path(), ec);
  {
    std::ofstream file(csv, std::ios::binary);
    if (!file) {
      err << "cannot write " << csv.string() << '\n';
      return kExitRuntimeError;
    }
    WriteCsv(report->rows, file);
  }
  {
    std::ofstream file(Sibling(csv, ".summary.txt"), std::ios::binary);
    WriteSummaryText(report->summary, file);
  }
  {
    std::ofstream file(Sibling(csv, ".summary.json"), std::ios::binary);
    file << SummaryJson(report->summary) << '\n';
  }

  const ResolvedParameters& p = report->parameters;
  out << "n = " << p.n << ", k = " << p.k;
  if (config->experiment.mechanism.kind != MechanismKind::kMedian) {
    out << ", epsilon = " << FormatNumber(p.epsilon);
  }
  out << ", advisory n = " << FormatNumber(p.advisory_n) << '\n';
  WriteSummaryText(report->summary, out);
  out << "wrote " << csv.string() << '\n';

  bool ok = true;
  for (const std::string& line : FailedAssertions(config->assertions, report->summary)) {
    err << "assertion failed: " << line << '\n';
    ok = false;
  }
  for (const std::string& suite : config->verify) {
    absl::StatusOr<SuiteResult> r = RunSuite(suite, 0, config->experiment.seed);
    if (!r.ok()) {
      err << r.status().message() << '\n';
      return kExitRuntimeError;
    }
    ok = PrintSuite(*r, out) && ok;
  }
  return ok ? kExitOk : kExitAssertionFailure;
}

int CmdVerify(const std::string& suite, std::uint64_t trials, std::uint64_t seed,
              std::ostream& out, std::ostream& err) {
  std::vector<std::string> suites;
  if (suite == "all") {
    suites = SuiteNames();
  } else {
    suites.push_back(suite);
  }
  bool ok = true;
  for (const std::string& name : suites) {
    absl::StatusOr<SuiteResult> r = RunSuite(name, trials, seed);
    if (absl::IsNotFound(r.status())) {
      err << r.status().message() << '\n';
      return kExitConfigError;
    }
    if (!r.ok()) {
      err << r.status().message() << '\n';
      return kExitRuntimeError;
    }
    ok = PrintSuite(*r, out) && ok;
  }
  return ok ? kExitOk : kExitAssertionFailure;
}

int CmdParams(const ParamsRequest& q, std::ostream& out, std::ostream& err) {
  auto row = [&out](const char* label, const std::string& value) {
    out << label << std::string(16 - std::string(label).size(), ' ') << value << '\n';
  };
  if (!q.median) {
    SqConstants c{q.c_epsilon, q.c_k};
    absl::StatusOr<SqParams> params =
        ComputeSqParams(std::max<std::int64_t>(q.n, 1), q.T, q.tau, q.delta, c);
    if (!params.ok()) {
      err << "params: " << params.status().message() << '\n';
      return kExitConfigError;
    }
    const std::int64_t n =
        q.n > 0 ? q.n : static_cast<std::int64_t>(std::ceil(params->advisory_n));
    params = ComputeSqParams(n, q.T, q.tau, q.delta, c);
    absl::StatusOr<double> vote = CostHighProbability(n, 2, params->epsilon, q.delta);
    if (!params.ok() || !vote.ok()) {
      err << "params: "
          << (params.ok() ? vote.status() : params.status()).message() << '\n';
      return kExitConfigError;
    }
    const double query_cost = static_cast<double>(params->k) * *vote;
    const double total = static_cast<double>(q.T) * query_cost;
    row("n", absl::StrCat(n));
    row("epsilon", FormatNumber(params->epsilon));
    row("k", absl::StrCat(params->k));
    row("advisory_n", FormatNumber(params->advisory_n));
    row("query_cost", FormatNumber(query_cost));
    row("total_budget", FormatNumber(total));
    row("mi_upper_bound", FormatNumber(static_cast<double>(n) * total));
    return kExitOk;
  }

  if (q.T < 1 || q.w < 1 || q.r_max < 1) {
    err << "params: need T >= 1, w >= 1, R >= 1\n";
    return kExitConfigError;
  }
  const std::vector<int> w_list(static_cast<std::size_t>(q.T), q.w);
  const std::vector<std::int64_t> r_sizes(static_cast<std::size_t>(q.T), q.r_max);
  MedianConstants c{q.c_m};
  absl::StatusOr<MedianParams> params =
      ComputeMedianParams(std::max<std::int64_t>(q.n, 1), q.T, w_list, r_sizes, q.delta, c);
  if (!params.ok()) {
    err << "params: " << params.status().message() << '\n';
    return kExitConfigError;
  }
  const std::int64_t n =
      q.n > 0 ? q.n : static_cast<std::int64_t>(std::ceil(params->advisory_n));
  params = ComputeMedianParams(n, q.T, w_list, r_sizes, q.delta, c);
  if (!params.ok()) {
    err << "params: " << params.status().message() << '\n';
    return kExitConfigError;
  }
  // A session over a placeholder sample prices one query exactly as Answer
  // books it.
  absl::StatusOr<Dataset> placeholder =
      Dataset::Create(std::vector<Element>(static_cast<std::size_t>(n), Element(0.0)));
  absl::StatusOr<MedianSession> session =
      placeholder.ok()
          ? MedianSession::Create(*placeholder, {params->k, true}, RandomSource(0))
          : absl::StatusOr<MedianSession>(placeholder.status());
  absl::StatusOr<double> query_cost =
      session.ok() ? session->QueryCost(q.w, static_cast<std::size_t>(q.r_max))
                   : absl::StatusOr<double>(session.status());
  if (!query_cost.ok()) {
    err << "params: " << query_cost.status().message() << '\n';
    return kExitConfigError;
  }
  const double total = static_cast<double>(q.T) * *query_cost;
  row("n", absl::StrCat(n));
  row("k", absl::StrCat(params->k));
  row("advisory_n", FormatNumber(params->advisory_n));
  row("group_size", absl::StrCat(params->group_size));
  row("max_flip", FormatNumber(params->max_flip));
  row("query_cost", FormatNumber(*query_cost));
  row("total_budget", FormatNumber(total));
  row("mi_upper_bound", FormatNumber(static_cast<double>(n) * total));
  return kExitOk;
}

int Main(int argc, char** argv) {
  CLI::App app{"Subsampling mechanisms for adaptive data analysis"};
  app.require_subcommand(1);

  std::string config_path;
  std::uint64_t seed = 0;
  int threads = 0;
  std::string out_path;
  CLI::App* run = app.add_subcommand("run", "Run an experiment config");
  run->add_option("config", config_path, "YAML config")->required();
  CLI::Option* seed_opt = run->add_option("--seed", seed, "Override the seed");
  CLI::Option* threads_opt =
      run->add_option("--threads", threads, "Cap on worker threads")->check(CLI::NonNegativeNumber);
  CLI::Option* out_opt = run->add_option("--out", out_path, "CSV output path");

  std::string suite;
  std::uint64_t trials = 0;
  std::uint64_t verify_seed = 1;
  CLI::App* verify = app.add_subcommand("verify", "Run a property suite");
  verify->add_option("suite", suite, "Suite name or 'all'")->required();
  verify->add_option("--trials", trials, "Instances (0: suite default)");
  verify->add_option("--seed", verify_seed, "Seed");

  ParamsRequest request;
  CLI::App* params = app.add_subcommand("params", "Print the parameter schedule");
  params->add_flag("--median", request.median, "Median mechanism schedule");
  params->add_option("--n", request.n, "Sample size (default: advisory minimum)");
  params->add_option("--T", request.T, "Number of queries");
  params->add_option("--tau", request.tau, "Accuracy");
  params->add_option("--delta", request.delta, "Failure probability");
  params->add_option("--c-epsilon", request.c_epsilon, "Constant in epsilon");
  params->add_option("--c-k", request.c_k, "Constant in k");
  params->add_option("--c-m", request.c_m, "Constant in the median k");
  params->add_option("--w", request.w, "Median query arity");
  params->add_option("--R", request.r_max, "Median range size");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfigError;
  }

  if (*run) {
    RunOverrides overrides;
    if (*seed_opt) overrides.seed = seed;
    if (*threads_opt) overrides.threads = threads;
    if (*out_opt) overrides.out = out_path;
    return CmdRun(config_path, overrides, std::cout, std::cerr);
  }
  if (*verify) return CmdVerify(suite, trials, verify_seed, std::cout, std::cerr);
  return CmdParams(request, std::cout, std::cerr);
}

}  // namespace adasub::cli
