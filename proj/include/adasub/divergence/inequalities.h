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

#ifndef ADASUB_DIVERGENCE_INEQUALITIES_H_
#define ADASUB_DIVERGENCE_INEQUALITIES_H_

#include <span>

#include "absl/status/statusor.h"

namespace adasub {

inline constexpr double kInequalitySlack = 1e-10;

struct InequalityCheck {
  bool passed = false;
  // +inf stands for an infinite side.
  double lhs = 0.0;
  double rhs = 0.0;
};

// KL(D || E) <= (1 + log(1/tau)) chi^2(D || E), given E(y) >= tau D(y) for
// every y. A violated ratio condition is a FailedPrecondition error, not a
// failed check; tau must lie in (0, 1].
absl::StatusOr<InequalityCheck> VerifyKlChiSquaredInequality(std::span<const double> d,
                                                             std::span<const double> e,
                                                             double tau);

// KL(D || E') <= (1 + log(|Y|/tau)) (chi^2(D || E) + tau) + tau for the
// mixture E' = (1 - tau) E + tau Unif(Y), 0 < tau <= 1. chi^2 is taken in its
// expectation form over supp(D), which is finite for every pair and never
// larger than Neyman's chi^2, so a pass here implies a pass for the latter.
absl::StatusOr<InequalityCheck> VerifyKlMixtureInequality(std::span<const double> d,
                                                          std::span<const double> e,
                                                          double tau);

// Largest tau with E(y) >= tau D(y) for all y, capped at 1.
double RatioFloor(std::span<const double> d, std::span<const double> e);

}  // namespace adasub

#endif  // ADASUB_DIVERGENCE_INEQUALITIES_H_
