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

#ifndef ADASUB_HARNESS_REPORT_H_
#define ADASUB_HARNESS_REPORT_H_

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace adasub {

// One line of an experiment report. Query rows have 1 <= t <= T; the
// analyst's tests follow as t = T + 1, T + 2, ... with ids "test/<id>".
//
// For statistical queries: answer = mechanism response, sample_value =
// phi(S), truth = phi(D), bias = |answer - truth|, threshold = max(tau
// std(phi), tau^2). For tests: answer = error(psi, S, D), sample_value =
// psi(S), truth = psi(D), bias = |psi(S) - psi(D)|. For median queries:
// truth = the population median of phi, sample_value = a Monte Carlo median
// of phi^(n)(S), threshold = the approximate-median mass, and within_bound
// is the approximate-median check against phi^(dist)(D).
struct ReportRow {
  std::int64_t trial = 0;
  std::int64_t t = 0;
  std::string query_id;
  std::string mechanism;
  double answer = 0.0;
  double sample_value = 0.0;
  double truth = 0.0;
  double bias = 0.0;
  double threshold = 0.0;
  bool within_bound = false;
  double cost = 0.0;
  bool is_test = false;
};

struct ExperimentSummary {
  std::int64_t trials = 0;
  std::int64_t n = 0;
  std::int64_t query_rows = 0;
  std::int64_t test_rows = 0;
  std::int64_t refusals = 0;
  double max_bias = 0.0;
  // Trials in which every query row is within bound.
  std::int64_t trials_all_within = 0;
  double fraction_trials_all_within = 0.0;
  double mean_test_error = 0.0;
  double max_test_error = 0.0;
  // Mean over test rows of psi(S) - psi(D), and of its absolute value.
  double mean_test_gap = 0.0;
  double mean_test_bias = 0.0;
  // Mean over trials of the charged total, and n times it.
  double mean_total_cost = 0.0;
  double mi_upper_bound = 0.0;
};

// Recomputes the summary from rows alone (plus the refusal count, which has
// no row).
ExperimentSummary Summarize(const std::vector<ReportRow>& rows, std::int64_t trials,
                            std::int64_t n, std::int64_t refusals);

inline constexpr char kCsvHeader[] =
    "trial,t,query_id,mechanism,answer,sample_value,truth,bias,threshold,"
    "within_bound,cost";

// Decimal with 12 significant digits.
std::string FormatNumber(double value);
void WriteCsv(const std::vector<ReportRow>& rows, std::ostream& out);
void WriteSummaryText(const ExperimentSummary& summary, std::ostream& out);
std::string SummaryJson(const ExperimentSummary& summary);

}  // namespace adasub

#endif  // ADASUB_HARNESS_REPORT_H_
