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

#include "adasub/engine/subsample.h"

#include "absl/strings/str_cat.h"

namespace adasub {

Subsampler::Subsampler(SampleView sample)
    : sample_(std::move(sample)), sampler_(sample_.size()) {}

absl::StatusOr<std::size_t> Subsampler::AnswerIndex(const Query& q,
                                                    RandomSource& rng) {
  if (q.arity < 1 || static_cast<std::size_t>(q.arity) > sample_.size()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "arity ", q.arity, " does not fit a sample of size ", sample_.size()));
  }
  std::span<const std::size_t> idx = sampler_.Draw(q.arity, rng);
  positions_.resize(idx.size());
  for (std::size_t j = 0; j < idx.size(); ++j) {
    positions_[j] = sample_.positions()[idx[j]];
  }
  const std::size_t y = q.Sample(TupleView(sample_.pool(), positions_), rng);
  if (y >= q.range_size()) {
    return absl::OutOfRangeError(absl::StrCat("query ", q.id, " produced index ", y,
                                              " outside |Y|=", q.range_size()));
  }
  return y;
}

absl::StatusOr<double> Subsampler::Answer(const Query& q, RandomSource& rng) {
  absl::StatusOr<std::size_t> y = AnswerIndex(q, rng);
  if (!y.ok()) return y.status();
  return q.range[*y];
}

absl::StatusOr<double> SubsampleAnswer(const Query& q, const SampleView& sample,
                                       RandomSource& rng) {
  Subsampler subsampler(sample);
  return subsampler.Answer(q, rng);
}

absl::StatusOr<double> SubsampleAnswer(const Query& q, const Dataset& sample,
                                       RandomSource& rng) {
  return SubsampleAnswer(q, sample.View(), rng);
}

}  // namespace adasub
