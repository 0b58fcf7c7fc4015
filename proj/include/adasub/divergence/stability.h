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

#ifndef ADASUB_DIVERGENCE_STABILITY_H_
#define ADASUB_DIVERGENCE_STABILITY_H_

#include <cstdint>
#include <vector>

#include "absl/status/statusor.h"
#include "adasub/core/combinatorics.h"
#include "adasub/core/dataset.h"
#include "adasub/core/query.h"
#include "adasub/divergence/divergence.h"

namespace adasub {

// w(|Y| - 1) / ((n - 1)(n - w)). Requires 1 <= w <= n - 1 and ysize >= 1.
absl::StatusOr<double> ChiSquaredStabilityBound(int n, int w, int ysize);

struct StabilityReport {
  // E_i chi^2(phi^(n)(S) || phi^(n-1)(S_{-i})).
  double measured = 0.0;
  // The closed form at the declared |Y|.
  double bound = 0.0;
  // The closed form with |Y| replaced by the number of outputs phi^(n)(S)
  // actually reaches. Never above `bound`; attained for deterministic w=1
  // queries.
  double effective_bound = 0.0;
  int effective_range = 0;
  std::vector<double> per_index;

  double slack() const { return bound - measured; }
};

// Exact measurement by enumeration over S and every S_{-i}. Requires
// 1 <= w <= n - 1.
absl::StatusOr<StabilityReport> MeasureLeaveOneOutChiSquared(
    const Query& q, const Dataset& sample, std::uint64_t cap = kDefaultEnumerationCap);

// E_i KL(phi^(n)(S) || (1 - mix) phi^(n-1)(S_{-i}) + mix Unif(Y)). Infinite
// when any index gives an infinite term. Requires 0 <= mix <= 1.
absl::StatusOr<Divergence> MeasureLeaveOneOutKl(
    const Query& q, const Dataset& sample, double mix,
    std::uint64_t cap = kDefaultEnumerationCap);

// eps (3 + 2 log(|Y| / eps)). Requires eps > 0.
absl::StatusOr<double> AlklBoundGeneral(double eps, int ysize);
// eps (1 + log(1 + w / (n p))). Requires p > 0.
absl::StatusOr<double> AlklBoundUniform(double eps, int w, int n, double p);

}  // namespace adasub

#endif  // ADASUB_DIVERGENCE_STABILITY_H_
