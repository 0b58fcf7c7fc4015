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

#ifndef ADASUB_CLI_CONFIG_H_
#define ADASUB_CLI_CONFIG_H_

#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "adasub/harness/experiment.h"

namespace adasub::cli {

// Environment variable naming the directory outputs go to when neither the
// config nor --out names a path.
inline constexpr char kOutputDirEnv[] = "ADASUB_OUTPUT_DIR";

// One bound on a summary field, e.g. "min_fraction_trials_all_within: 0.9".
struct Assertion {
  std::string field;
  bool is_min = true;
  double bound = 0.0;
};

struct RunConfig {
  ExperimentConfig experiment;
  // CSV path; empty means <output dir>/<config stem>.csv.
  std::string output;
  std::vector<Assertion> assertions;
  // Property suites run after the experiment, at their default sizes.
  std::vector<std::string> verify;
};

// Parses a YAML document. Every key is checked against the schema before
// anything runs; unknown keys, unknown names and ill-typed values are
// InvalidArgument with the offending key in the message.
absl::StatusOr<RunConfig> ParseRunConfig(const std::string& text);
absl::StatusOr<RunConfig> LoadRunConfig(const std::string& path);

// Checks each assertion against the summary's machine-readable form.
// Returns the failed assertions as readable lines.
std::vector<std::string> FailedAssertions(const std::vector<Assertion>& assertions,
                                          const ExperimentSummary& summary);

}  // namespace adasub::cli

#endif  // ADASUB_CLI_CONFIG_H_
