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

#include "adasub/harness/report.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

#include "absl/strings/str_format.h"
#include "json.hpp"

namespace adasub {
namespace {

// Quotes a CSV field when it holds a separator or quote.
std::string CsvField(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

ExperimentSummary Summarize(const std::vector<ReportRow>& rows, std::int64_t trials,
                            std::int64_t n, std::int64_t refusals) {
  ExperimentSummary s;
  s.trials = trials;
  s.n = n;
  s.refusals = refusals;
  std::map<std::int64_t, bool> all_within;
  std::map<std::int64_t, double> cost;
  for (std::int64_t t = 0; t < trials; ++t) {
    all_within[t] = true;
    cost[t] = 0.0;
  }
  double error_sum = 0.0;
  double gap_sum = 0.0;
  double bias_sum = 0.0;
  for (const ReportRow& r : rows) {
    cost[r.trial] += r.cost;
    if (r.is_test) {
      ++s.test_rows;
      error_sum += r.answer;
      s.max_test_error = std::max(s.max_test_error, r.answer);
      gap_sum += r.sample_value - r.truth;
      bias_sum += r.bias;
      continue;
    }
    ++s.query_rows;
    s.max_bias = std::max(s.max_bias, r.bias);
    if (!r.within_bound) all_within[r.trial] = false;
  }
  for (const auto& [trial, ok] : all_within) s.trials_all_within += ok ? 1 : 0;
  double cost_sum = 0.0;
  for (const auto& [trial, c] : cost) cost_sum += c;
  if (trials > 0) {
    s.fraction_trials_all_within =
        static_cast<double>(s.trials_all_within) / static_cast<double>(trials);
    s.mean_total_cost = cost_sum / static_cast<double>(trials);
  }
  if (s.test_rows > 0) {
    s.mean_test_error = error_sum / static_cast<double>(s.test_rows);
    s.mean_test_gap = gap_sum / static_cast<double>(s.test_rows);
    s.mean_test_bias = bias_sum / static_cast<double>(s.test_rows);
  }
  s.mi_upper_bound = static_cast<double>(n) * s.mean_total_cost;
  return s;
}

std::string FormatNumber(double value) {
  if (value == 0.0) return "0";
  return absl::StrFormat("%.12g", value);
}

void WriteCsv(const std::vector<ReportRow>& rows, std::ostream& out) {
  out << kCsvHeader << '\n';
  for (const ReportRow& r : rows) {
    out << r.trial << ',' << r.t << ',' << CsvField(r.query_id) << ','
        << CsvField(r.mechanism) << ',' << FormatNumber(r.answer) << ','
        << FormatNumber(r.sample_value) << ',' << FormatNumber(r.truth) << ','
        << FormatNumber(r.bias) << ',' << FormatNumber(r.threshold) << ','
        << (r.within_bound ? 1 : 0) << ',' << FormatNumber(r.cost) << '\n';
  }
}

void WriteSummaryText(const ExperimentSummary& s, std::ostream& out) {
  out << "trials                     " << s.trials << '\n'
      << "n                          " << s.n << '\n'
      << "query rows                 " << s.query_rows << '\n'
      << "test rows                  " << s.test_rows << '\n'
      << "refusals                   " << s.refusals << '\n'
      << "max bias                   " << FormatNumber(s.max_bias) << '\n'
      << "trials all within bound    " << s.trials_all_within << " ("
      << FormatNumber(s.fraction_trials_all_within) << ")\n"
      << "mean test error            " << FormatNumber(s.mean_test_error) << '\n'
      << "max test error             " << FormatNumber(s.max_test_error) << '\n'
      << "mean test gap              " << FormatNumber(s.mean_test_gap) << '\n'
      << "mean test bias             " << FormatNumber(s.mean_test_bias) << '\n'
      << "mean total cost            " << FormatNumber(s.mean_total_cost) << '\n'
      << "MI upper bound             " << FormatNumber(s.mi_upper_bound) << '\n';
}

std::string SummaryJson(const ExperimentSummary& s) {
  nlohmann::ordered_json j;
  j["trials"] = s.trials;
  j["n"] = s.n;
  j["query_rows"] = s.query_rows;
  j["test_rows"] = s.test_rows;
  j["refusals"] = s.refusals;
  j["max_bias"] = s.max_bias;
  j["trials_all_within"] = s.trials_all_within;
  j["fraction_trials_all_within"] = s.fraction_trials_all_within;
  j["mean_test_error"] = s.mean_test_error;
  j["max_test_error"] = s.max_test_error;
  j["mean_test_gap"] = s.mean_test_gap;
  j["mean_test_bias"] = s.mean_test_bias;
  j["mean_total_cost"] = s.mean_total_cost;
  j["mi_upper_bound"] = s.mi_upper_bound;
  return j.dump(2);
}

}  // namespace adasub
