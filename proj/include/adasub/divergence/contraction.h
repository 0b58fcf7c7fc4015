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

#ifndef ADASUB_DIVERGENCE_CONTRACTION_H_
#define ADASUB_DIVERGENCE_CONTRACTION_H_

#include <span>

#include "absl/status/statusor.h"

namespace adasub {

struct ContractionResult {
  // Var_{i ~ [n]} E[f(T) | i not in T].
  double lhs = 0.0;
  // w / ((n - 1)(n - w)) * Var_T f(T).
  double rhs = 0.0;
};

// `f` lists f(T) for every w-subset T of [n] in lexicographic order (the
// order of ForEachSubset). Requires 0 <= w <= n - 1 and |f| = C(n, w).
absl::StatusOr<ContractionResult> VerifyVarianceContraction(std::span<const double> f,
                                                            int n, int w);

}  // namespace adasub

#endif  // ADASUB_DIVERGENCE_CONTRACTION_H_
