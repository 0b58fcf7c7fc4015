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

#ifndef ADASUB_MECHANISMS_COST_H_
#define ADASUB_MECHANISMS_COST_H_

#include <cstdint>

#include "absl/status/statusor.h"

namespace adasub {

// Per-query charges for subsampling queries on an n-element sample. All logs
// are natural.

// w |Y| log(n) / (n - w). Requires 1 <= w < n.
absl::StatusOr<double> CostBasic(std::int64_t n, int w, int ysize);

// (w |Y| / (n - w)) min(log n, 1 + log(1 + w / (n p))) for a p-uniform
// query; p = 0 selects the log n branch. Requires 1 <= w < n, p >= 0.
absl::StatusOr<double> CostUniform(std::int64_t n, int w, int ysize, double p);

// (|Y| / n) min(log n, 1 + log(1 + log(1/delta) / (n p))), the charge for
// high-probability budgets (w = 1). Requires n >= 1, 0 < delta < 1, p >= 0.
absl::StatusOr<double> CostHighProbability(std::int64_t n, int ysize, double p,
                                           double delta);

}  // namespace adasub

#endif  // ADASUB_MECHANISMS_COST_H_
