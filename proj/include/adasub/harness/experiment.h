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

#ifndef ADASUB_HARNESS_EXPERIMENT_H_
#define ADASUB_HARNESS_EXPERIMENT_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "adasub/harness/population.h"
#include "adasub/harness/report.h"
#include "adasub/mechanisms/ledger.h"
#include "adasub/mechanisms/median_mechanism.h"
#include "adasub/mechanisms/sq_mechanism.h"

namespace adasub {

enum class MechanismKind { kSubsamplingSq, kNaive, kMedian };

// Parses "subsampling_sq", "naive", "median".
absl::StatusOr<MechanismKind> ParseMechanismKind(const std::string& name);
std::string MechanismName(MechanismKind kind);

struct MechanismSpec {
  MechanismKind kind = MechanismKind::kSubsamplingSq;
  // Statistical queries. A negative epsilon or a zero k is filled in from the
  // parameter schedule at the analyst's T, tau, delta.
  double epsilon = -1.0;
  std::int64_t k = 0;
  SqConstants sq_constants;
  // Median queries. Zero k is filled in from the schedule.
  std::int64_t median_k = 0;
  bool add_noise = true;
  MedianConstants median_constants;
  double median_mass = kApproximateMedianMass;
  // Draws for the Monte Carlo sample-side median reported in each row.
  std::int64_t sample_value_draws = 4096;
  BudgetMode budget_mode = BudgetMode::kExpectation;
  double budget = 0.0;
};

struct AnalystSpec {
  // "fixed", "random_correlation", "median_drift".
  std::string name = "fixed";
  std::int64_t rounds = 1;
  double tau = 0.1;
  double delta = 0.1;
  // fixed: query descriptors (see ParseTestQuery); replayed cyclically when
  // rounds exceeds their number.
  std::vector<std::string> queries;
  // Strategy knobs: random_correlation takes center and adaptive_queries
  // (0/1); median_drift takes max_arity, grid_points, grid_lo, grid_hi.
  std::map<std::string, double> params;
};

struct ExperimentConfig {
  std::uint64_t seed = 0;
  std::string population = "bernoulli";
  PopulationParams population_params;
  // Sample size. Zero means ceil(n_factor * advisory n) from the schedule.
  std::int64_t n = 0;
  double n_factor = 1.0;
  MechanismSpec mechanism;
  AnalystSpec analyst;
  std::int64_t trials = 1;
  // Worker threads; 0 picks the hardware concurrency.
  int threads = 0;
};

// Parameters fixed before any trial runs.
struct ResolvedParameters {
  std::int64_t n = 0;
  double epsilon = 0.0;
  std::int64_t k = 0;
  double advisory_n = 0.0;
};

struct ExperimentReport {
  ExperimentConfig config;
  ResolvedParameters parameters;
  std::vector<ReportRow> rows;
  // Ledger total of each trial.
  std::vector<double> ledger_totals;
  std::int64_t refusals = 0;
  ExperimentSummary summary;
};

// Validates the config and fills in scheduled parameters.
absl::StatusOr<ResolvedParameters> ResolveParameters(const ExperimentConfig& config);

// Trial i draws S ~ D^n from RandomSource(seed).Split("trial").Split(i), runs
// the analyst against the mechanism and records one row per query and test.
// Trials run concurrently; rows come out in (trial, t) order whatever the
// thread count.
absl::StatusOr<ExperimentReport> RunExperiment(const ExperimentConfig& config);

}  // namespace adasub

#endif  // ADASUB_HARNESS_EXPERIMENT_H_
