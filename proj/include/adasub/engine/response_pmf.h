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

#ifndef ADASUB_ENGINE_RESPONSE_PMF_H_
#define ADASUB_ENGINE_RESPONSE_PMF_H_

#include <cstdint>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "adasub/core/combinatorics.h"
#include "adasub/core/dataset.h"
#include "adasub/core/query.h"

namespace adasub {

// A probability mass function over an ordered output range.
struct ResponsePmf {
  std::vector<double> range;
  std::vector<double> masses;

  std::size_t size() const { return range.size(); }
  // Aligned, nonnegative, summing to 1 within 1e-12.
  absl::Status Validate() const;
  double Mean() const;
  // Point mass on range[index].
  static ResponsePmf PointMass(std::vector<double> range, std::size_t index);
};

// Exact law of phi^(n)(S): the average over all w-subsets (and their
// orderings, unless the query is order invariant) of the query's output
// distribution. Fails for opaque queries and when the number of terms exceeds
// `cap`: C(n, w), times w! for order-sensitive queries, times |Y| unless the
// query is deterministic.
absl::StatusOr<ResponsePmf> ExactResponsePmf(const Query& q, const SampleView& sample,
                                             std::uint64_t cap = kDefaultEnumerationCap);
absl::StatusOr<ResponsePmf> ExactResponsePmf(const Query& q, const Dataset& sample,
                                             std::uint64_t cap = kDefaultEnumerationCap);

// Exact law of phi^(dist)(D) by enumerating support^w.
absl::StatusOr<ResponsePmf> PopulationResponsePmf(
    const Query& q, const GroundTruth& d, std::uint64_t cap = kDefaultEnumerationCap);

}  // namespace adasub

#endif  // ADASUB_ENGINE_RESPONSE_PMF_H_
