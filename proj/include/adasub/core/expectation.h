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

#ifndef ADASUB_CORE_EXPECTATION_H_
#define ADASUB_CORE_EXPECTATION_H_

#include <cstdint>
#include <functional>

#include "absl/status/statusor.h"
#include "adasub/core/combinatorics.h"
#include "adasub/core/dataset.h"
#include "adasub/core/query.h"

namespace adasub {

// How an expectation is computed: exhaustively while the number of
// subsets (or support tuples) stays within `cap`, otherwise by Monte Carlo
// with `monte_carlo_draws` draws. With no draws budgeted, exceeding the cap
// is an error.
struct EnumerationOptions {
  std::uint64_t cap = kDefaultEnumerationCap;
  std::uint64_t monte_carlo_draws = 0;
  std::uint64_t monte_carlo_seed = 0;
};

// Terms in an exact pass over an n-element sample: C(n, w), times w! when
// the query distinguishes argument order. Saturates.
std::uint64_t SampleEnumerationSize(std::size_t n, int arity, bool order_invariant);

// Visits every ordered w-tuple of distinct sample positions (each subset once
// if `order_invariant`). Stops at the first non-OK status from `visit`.
absl::Status ForEachSampleTuple(const SampleView& sample, int arity,
                                bool order_invariant,
                                const std::function<absl::Status(TupleView)>& visit);

// Visits every support tuple of positive probability with its product mass.
absl::Status ForEachPopulationTuple(
    const GroundTruth& d, int arity,
    const std::function<absl::Status(TupleView, double)>& visit);

struct Estimate {
  double value = 0.0;
  // Zero for exact results.
  double standard_error = 0.0;
  bool exact = true;
};

// phi(S): expectation of phi over a uniform without-replacement w-subset of
// the sample's positions (and over phi's internal randomness).
absl::StatusOr<Estimate> ExpectationOnSample(const TestQuery& q,
                                             const SampleView& sample,
                                             const EnumerationOptions& options = {});
// Same for a real-valued subsampling query: E[y], y ~ phi^(n)(S).
absl::StatusOr<Estimate> ExpectationOnSample(const Query& q,
                                             const SampleView& sample,
                                             const EnumerationOptions& options = {});

// phi(D): expectation over iid draws x_1..x_w ~ D.
absl::StatusOr<Estimate> ExpectationOnPopulation(const TestQuery& q,
                                                 const GroundTruth& d,
                                                 const EnumerationOptions& options = {});
absl::StatusOr<Estimate> ExpectationOnPopulation(const Query& q,
                                                 const GroundTruth& d,
                                                 const EnumerationOptions& options = {});

struct Moments {
  double mean = 0.0;
  double variance = 0.0;
};

// Mean and Var_D(psi) of psi over iid D^w. Exact only.
absl::StatusOr<Moments> PopulationMoments(const TestQuery& q, const GroundTruth& d,
                                          std::uint64_t cap = kDefaultEnumerationCap);

// error = (1/w) * min(gap, gap^2 / variance), with the ratio read as +inf
// when the variance is zero.
double ErrorFromGap(double gap, double variance, int arity);

struct ErrorBreakdown {
  double sample_value = 0.0;
  double population_value = 0.0;
  double gap = 0.0;
  double variance = 0.0;
  double error = 0.0;
};

// error(psi, S, D) with gap = |psi(S) - psi(D)|.
absl::StatusOr<ErrorBreakdown> ErrorMetric(const TestQuery& psi,
                                           const SampleView& sample,
                                           const GroundTruth& d,
                                           const EnumerationOptions& options = {});

}  // namespace adasub

#endif  // ADASUB_CORE_EXPECTATION_H_
