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

#include "adasub/core/query.h"

#include <algorithm>
#include <cassert>

#include "absl/container/inlined_vector.h"
#include "absl/strings/str_cat.h"

namespace adasub {

absl::Status Query::Distribution(TupleView tuple, std::span<double> out) const {
  assert(out.size() == range.size());
  if (const auto* det = std::get_if<DeterministicEvaluator>(&evaluator)) {
    const std::size_t y = (*det)(tuple);
    if (y >= range.size()) {
      return absl::OutOfRangeError(absl::StrCat(
          "query ", id, " produced output index ", y, " outside |Y|=",
          range.size()));
    }
    std::fill(out.begin(), out.end(), 0.0);
    out[y] = 1.0;
    return absl::OkStatus();
  }
  if (const auto* dist = std::get_if<DistributionEvaluator>(&evaluator)) {
    (*dist)(tuple, out);
    return absl::OkStatus();
  }
  return absl::FailedPreconditionError(
      absl::StrCat("query ", id, " is opaque; its output law is not available"));
}

std::size_t Query::Sample(TupleView tuple, RandomSource& rng) const {
  if (const auto* det = std::get_if<DeterministicEvaluator>(&evaluator)) {
    return (*det)(tuple);
  }
  if (const auto* sampler = std::get_if<SamplingEvaluator>(&evaluator)) {
    return (*sampler)(tuple, rng);
  }
  absl::InlinedVector<double, 8> masses(range.size());
  std::get<DistributionEvaluator>(evaluator)(tuple, std::span<double>(masses));
  double u = rng.Uniform();
  for (std::size_t j = 0; j + 1 < masses.size(); ++j) {
    if (u < masses[j]) return j;
    u -= masses[j];
  }
  // Rounding residue lands on the last output with positive mass.
  std::size_t last = masses.size() - 1;
  while (last > 0 && masses[last] == 0.0) --last;
  return last;
}

}  // namespace adasub
