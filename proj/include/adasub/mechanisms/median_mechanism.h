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

#ifndef ADASUB_MECHANISMS_MEDIAN_MECHANISM_H_
#define ADASUB_MECHANISMS_MEDIAN_MECHANISM_H_

#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "adasub/core/dataset.h"
#include "adasub/core/query.h"
#include "adasub/core/random.h"
#include "adasub/core/transcript.h"
#include "adasub/engine/response_pmf.h"
#include "adasub/engine/subsample.h"
#include "adasub/mechanisms/ledger.h"

namespace adasub {

inline constexpr double kApproximateMedianMass = 0.4;

// y is an approximate median of the law when Pr[x <= y] and Pr[x >= y] both
// reach `mass`. The non-strict comparisons let a point mass have a median.
bool IsApproximateMedian(const ResponsePmf& law, double y,
                         double mass = kApproximateMedianMass);

// The proof's constant is 300 (from exp(-k/300)); 8 is what the experiments
// run with.
struct MedianConstants {
  double c_m = 8.0;
};

struct MedianParams {
  std::int64_t k = 0;
  // k sqrt(w_max sum_t w_t): the sample-size gate with k standing in for its
  // log(T log R_max / delta) factor, leading constant 1.
  double advisory_n = 0.0;
  // Group size floor(n / k) and the largest flip probability w_max / that
  // size, for the supplied n.
  std::int64_t group_size = 0;
  double max_flip = 0.0;
};

// k = max(2, ceil(c_m log(2 T ceil(log2 R_max) / delta))), where R_max is the
// largest range size; a log term of 0 (R_max = 1) leaves k = 2. `w_list` has
// one arity per planned query.
absl::StatusOr<MedianParams> ComputeMedianParams(std::int64_t n, std::int64_t T,
                                                 std::span<const int> w_list,
                                                 std::span<const std::int64_t> r_sizes,
                                                 double delta,
                                                 const MedianConstants& c = {});

// ceil(log2(size)) for size >= 1.
int CeilLog2(std::int64_t size);

struct MedianOptions {
  std::int64_t k = 2;
  // Flip each vote with probability w / |S^(i)|. Without it every vote is
  // charged at p = 0 and no accuracy claim applies.
  bool add_noise = true;
};

// Splits S into k contiguous groups (sizes floor(n/k) or ceil(n/k), larger
// groups first) and answers real-valued queries by binary search over the
// query's sorted range: at each probe r every group votes Ind[phi(S') >= r]
// on a fresh subsample S' of itself, and the search moves up iff at least
// half the votes (ties included) say so.
//
// Randomness for group i in search round j of query t comes from
// rng.Split(t).Split(j).Split(i).
class MedianSession {
 public:
  static absl::StatusOr<MedianSession> Create(Dataset sample, const MedianOptions& options,
                                              RandomSource rng, BudgetLedger ledger = {});

  // Fails when the range is empty or not strictly increasing, when the arity
  // does not leave room in the smallest group, and with ResourceExhausted
  // when the ledger refuses the whole query's charge up front.
  absl::StatusOr<double> Answer(const Query& phi);

  // Total charge for one query of this shape, as booked by Answer.
  absl::StatusOr<double> QueryCost(int arity, std::size_t range_size) const;

  const std::vector<SampleView>& groups() const { return groups_; }
  const MedianOptions& options() const { return options_; }
  const Transcript& transcript() const { return transcript_; }
  const BudgetLedger& ledger() const { return ledger_; }

 private:
  MedianSession(Dataset sample, const MedianOptions& options, RandomSource rng,
                BudgetLedger ledger);

  Dataset sample_;
  MedianOptions options_;
  RandomSource rng_;
  BudgetLedger ledger_;
  std::vector<SampleView> groups_;
  std::vector<Subsampler> subsamplers_;
  Transcript transcript_;
};

}  // namespace adasub

#endif  // ADASUB_MECHANISMS_MEDIAN_MECHANISM_H_
