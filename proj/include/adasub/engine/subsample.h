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

#ifndef ADASUB_ENGINE_SUBSAMPLE_H_
#define ADASUB_ENGINE_SUBSAMPLE_H_

#include <cstddef>
#include <vector>

#include "absl/status/statusor.h"
#include "adasub/core/combinatorics.h"
#include "adasub/core/dataset.h"
#include "adasub/core/query.h"
#include "adasub/core/random.h"

namespace adasub {

// Answers subsampling queries against one sample. Each answer draws a fresh
// uniform without-replacement w-subset of the sample's positions, in random
// order, and applies the query to it. Keeps its shuffle buffer between calls,
// so a draw costs O(w).
class Subsampler {
 public:
  explicit Subsampler(SampleView sample);

  const SampleView& sample() const { return sample_; }

  // Output index into q.range. Fails when the arity exceeds the sample size
  // or the evaluator leaves the range.
  absl::StatusOr<std::size_t> AnswerIndex(const Query& q, RandomSource& rng);
  absl::StatusOr<double> Answer(const Query& q, RandomSource& rng);

 private:
  SampleView sample_;
  SubsetSampler sampler_;
  std::vector<std::size_t> positions_;
};

// One-shot forms.
absl::StatusOr<double> SubsampleAnswer(const Query& q, const SampleView& sample,
                                       RandomSource& rng);
absl::StatusOr<double> SubsampleAnswer(const Query& q, const Dataset& sample,
                                       RandomSource& rng);

}  // namespace adasub

#endif  // ADASUB_ENGINE_SUBSAMPLE_H_
