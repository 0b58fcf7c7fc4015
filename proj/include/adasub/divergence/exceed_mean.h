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

#ifndef ADASUB_DIVERGENCE_EXCEED_MEAN_H_
#define ADASUB_DIVERGENCE_EXCEED_MEAN_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "adasub/core/combinatorics.h"
#include "adasub/core/random.h"

namespace adasub {

// (2 sqrt(3) - 3) / 13, the guaranteed lower bound on Pr[x > E[x] - 1].
double SampleExceedsMeanFloor();

struct ExceedMeanEstimate {
  double probability = 0.0;
  double standard_error = 0.0;
  bool exact = false;
};

// x is the sum of n draws without replacement from `values` (each in
// [0, 1]); estimates Pr[x > E[x] - 1] from `trials` draws. Requires
// 1 <= n < |values| and values in [0, 1].
absl::StatusOr<ExceedMeanEstimate> SampleExceedsMeanProbe(std::span<const double> values,
                                                          int n, std::uint64_t trials,
                                                          RandomSource& rng);

// The same probability by enumerating all C(|values|, n) subsets.
absl::StatusOr<ExceedMeanEstimate> SampleExceedsMeanExact(
    std::span<const double> values, int n, std::uint64_t cap = kDefaultEnumerationCap);

struct NamedExceedMeanProbe {
  std::string name;
  std::vector<double> values;
  int n = 0;
  ExceedMeanEstimate estimate;
};

// The three reference instances: "all-equal" (20 copies of 0.5, n = 7,
// 10^4 draws), "half-ones" (200 zeros and 200 ones, n = 100, 10^5 draws) and
// "alternating" (0/1 alternating, length 10, n = 5, exact).
absl::StatusOr<std::vector<NamedExceedMeanProbe>> StandardExceedMeanProbes(
    std::uint64_t seed);

}  // namespace adasub

#endif  // ADASUB_DIVERGENCE_EXCEED_MEAN_H_
