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

#ifndef ADASUB_DIVERGENCE_SUITES_H_
#define ADASUB_DIVERGENCE_SUITES_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"

namespace adasub {

// Named property suites over seeded random instances. Instance i of suite
// "name" draws from RandomSource(seed).Split(name).Split(i), so a reported
// counterexample can be regenerated alone.
struct SuiteResult {
  std::string name;
  bool passed = true;
  std::uint64_t instances = 0;
  std::uint64_t failures = 0;
  // Summary statistics in display order.
  std::vector<std::pair<std::string, double>> stats;
  // JSON for the first failing instance; empty when none failed.
  std::string counterexample;
};

// chi2-stability, var-contraction, var-contraction-linear-equality, kl-chi2,
// kl-mixture, alkl, sample-exceeds-mean.
const std::vector<std::string>& SuiteNames();
std::uint64_t DefaultSuiteTrials(std::string_view name);

// `trials` = 0 selects the suite's default. Unknown names are NotFound.
absl::StatusOr<SuiteResult> RunSuite(std::string_view name, std::uint64_t trials,
                                     std::uint64_t seed);

}  // namespace adasub

#endif  // ADASUB_DIVERGENCE_SUITES_H_
