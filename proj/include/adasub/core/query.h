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

#ifndef ADASUB_CORE_QUERY_H_
#define ADASUB_CORE_QUERY_H_

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "absl/status/status.h"
#include "adasub/core/dataset.h"
#include "adasub/core/random.h"

namespace adasub {

// Evaluator kinds for a subsampling query phi: X^w -> Y. Outputs are indices
// into the query's range.
//
// Deterministic: one output per tuple.
using DeterministicEvaluator = std::function<std::size_t(TupleView)>;
// Randomized with an explicit law: writes Pr[phi(tuple) = Y[j]] into out[j].
using DistributionEvaluator =
    std::function<void(TupleView, std::span<double> out)>;
// Randomized and opaque: only samples can be drawn.
using SamplingEvaluator = std::function<std::size_t(TupleView, RandomSource&)>;

using Evaluator =
    std::variant<DeterministicEvaluator, DistributionEvaluator, SamplingEvaluator>;

// A subsampling query with a finite ordered range Y. Categorical ranges are
// coded as 0..|Y|-1; real-valued ranges (median queries) list their grid.
struct Query {
  std::string id;
  int arity = 1;
  std::vector<double> range;
  Evaluator evaluator;
  // Declared p-uniformity floor; 0 when nothing is claimed.
  double uniformity_floor = 0.0;
  // When true, the evaluator ignores argument order and exact enumeration
  // visits each w-subset once instead of every ordering of it.
  bool order_invariant = false;

  std::size_t range_size() const { return range.size(); }
  bool is_opaque() const {
    return std::holds_alternative<SamplingEvaluator>(evaluator);
  }

  // Writes the output law on `tuple` into `out` (size |Y|). Fails for opaque
  // evaluators and for outputs outside the range.
  absl::Status Distribution(TupleView tuple, std::span<double> out) const;
  // Draws one output index.
  std::size_t Sample(TupleView tuple, RandomSource& rng) const;
};

// Closed forms a population may use in place of enumeration.
struct OpaqueShape {
  friend bool operator==(const OpaqueShape&, const OpaqueShape&) = default;
};
// Ind[x_c = +1] (or Ind[x_c = -1] when !positive) on sign vectors.
struct CoordinateIndicator {
  std::size_t coordinate = 0;
  bool positive = true;
  friend bool operator==(const CoordinateIndicator&,
                         const CoordinateIndicator&) = default;
};
// Ind[sum_t signs[t] * x_t > 0] on sign vectors.
struct SignedSumIndicator {
  std::vector<int> signs;
  friend bool operator==(const SignedSumIndicator&,
                         const SignedSumIndicator&) = default;
};
// psi(x) = c for every tuple.
struct ConstantShape {
  double value = 0.0;
  friend bool operator==(const ConstantShape&, const ConstantShape&) = default;
};

using QueryShape =
    std::variant<OpaqueShape, CoordinateIndicator, SignedSumIndicator, ConstantShape>;

// A test query psi: X^w -> [0, 1]. Also the type of statistical queries
// (w = 1). Returning a value outside [0, 1] is a contract violation that
// the expectation routines report rather than clamp.
struct TestQuery {
  std::string id;
  int arity = 1;
  std::function<double(TupleView)> evaluate;
  QueryShape shape;
  bool order_invariant = false;

  double operator()(TupleView tuple) const { return evaluate(tuple); }
};

}  // namespace adasub

#endif  // ADASUB_CORE_QUERY_H_
