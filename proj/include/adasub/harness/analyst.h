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

#ifndef ADASUB_HARNESS_ANALYST_H_
#define ADASUB_HARNESS_ANALYST_H_

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "adasub/core/query.h"
#include "adasub/core/random.h"

namespace adasub {

// An adaptive analyst. It sees only the responses to its own earlier
// queries; no method receives the sample. After rounds() queries it names
// the tests whose error is reported.
template <typename QueryT>
class AdaptiveAnalyst {
 public:
  virtual ~AdaptiveAnalyst() = default;

  virtual std::int64_t rounds() const = 0;
  // Query for round t (1-based), given responses y_1, ..., y_{t-1}.
  virtual QueryT NextQuery(std::int64_t t, std::span<const double> responses,
                           RandomSource& rng) = 0;
  virtual std::vector<TestQuery> Tests(std::span<const double> responses,
                                       RandomSource& rng) = 0;

  // Arity and range size of every planned query, for parameter schedules.
  virtual std::vector<int> PlannedArities() const {
    return std::vector<int>(static_cast<std::size_t>(rounds()), 1);
  }
  virtual std::vector<std::int64_t> PlannedRangeSizes() const {
    return std::vector<std::int64_t>(static_cast<std::size_t>(rounds()), 2);
  }
};

using SqAnalyst = AdaptiveAnalyst<TestQuery>;
using MedianAnalyst = AdaptiveAnalyst<Query>;

// Replays `queries` in order, ignoring responses; the tests are the same
// queries.
std::unique_ptr<SqAnalyst> MakeFixedAnalyst(std::vector<TestQuery> queries);

struct RandomCorrelationOptions {
  std::int64_t rounds = 1;
  // Answers above the center count as positive correlation.
  double center = 0.5;
  // When set, round t asks Ind[x_t = sigma_t] with sigma_t the side the
  // previous answer fell on, so each query depends on the last response.
  bool adaptive_queries = false;
};

// The overfitting adversary on {-1, +1}^T: round t asks for the frequency of
// a sign at coordinate t; the single test is Ind[sum_t s_t x_t > 0], where
// s_t is the sign the answer to round t leaned towards (ties go to +1).
std::unique_ptr<SqAnalyst> MakeRandomCorrelationAnalyst(
    const RandomCorrelationOptions& options);

struct MedianDriftOptions {
  std::int64_t rounds = 1;
  int max_arity = 4;
  // Outputs are snapped to `grid_points` equally spaced values on
  // [grid_lo, grid_hi].
  int grid_points = 64;
  double grid_lo = -4.0;
  double grid_hi = 4.0;
};

// Median queries on real data. Round t has arity 1 + (t - 1) mod max_arity
// and asks for s_t * mean(x_1..x_w) + a_t snapped to the grid, where the
// shift a_t and the sign s_t are set from the previous answer. No tests.
std::unique_ptr<MedianAnalyst> MakeMedianDriftAnalyst(const MedianDriftOptions& options);

// The value on `grid` nearest to x (ties to the lower index). `grid` must
// be sorted.
std::size_t SnapToGrid(const std::vector<double>& grid, double x);

// Parses "constant:<v>", "identity", "threshold:<r>", "coord:<i>" and
// "coord-:<i>" (indicator of x_i = -1).
absl::StatusOr<TestQuery> ParseTestQuery(std::string_view descriptor);

}  // namespace adasub

#endif  // ADASUB_HARNESS_ANALYST_H_
