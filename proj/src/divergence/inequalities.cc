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

#include "adasub/divergence/inequalities.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "absl/strings/str_cat.h"
#include "adasub/divergence/divergence.h"

namespace adasub {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double AsDouble(const Divergence& d) { return d.ValueOr(kInf); }

}  // namespace

double RatioFloor(std::span<const double> d, std::span<const double> e) {
  double tau = 1.0;
  for (std::size_t y = 0; y < d.size() && y < e.size(); ++y) {
    if (d[y] > 0.0) tau = std::min(tau, e[y] / d[y]);
  }
  return tau;
}

absl::StatusOr<InequalityCheck> VerifyKlChiSquaredInequality(std::span<const double> d,
                                                             std::span<const double> e,
                                                             double tau) {
  if (!(tau > 0.0 && tau <= 1.0)) {
    return absl::InvalidArgumentError(absl::StrCat("tau ", tau, " outside (0, 1]"));
  }
  if (d.size() != e.size()) return absl::InvalidArgumentError("range mismatch");
  for (std::size_t y = 0; y < d.size(); ++y) {
    if (e[y] < tau * d[y] * (1.0 - 1e-12)) {
      return absl::FailedPreconditionError(absl::StrCat(
          "E(y) >= tau D(y) fails at y=", y, ": E=", e[y], ", D=", d[y], ", tau=", tau));
    }
  }
  absl::StatusOr<Divergence> kl = KlDivergence(d, e);
  if (!kl.ok()) return kl.status();
  absl::StatusOr<Divergence> chi2 = ChiSquaredDivergence(d, e);
  if (!chi2.ok()) return chi2.status();

  InequalityCheck check;
  check.lhs = AsDouble(*kl);
  check.rhs = chi2->is_infinite() ? kInf : (1.0 - std::log(tau)) * chi2->value();
  check.passed = check.lhs <= check.rhs + kInequalitySlack;
  return check;
}

absl::StatusOr<InequalityCheck> VerifyKlMixtureInequality(std::span<const double> d,
                                                          std::span<const double> e,
                                                          double tau) {
  if (!(tau > 0.0 && tau <= 1.0)) {
    return absl::InvalidArgumentError(absl::StrCat("tau ", tau, " outside (0, 1]"));
  }
  if (d.size() != e.size() || d.empty()) {
    return absl::InvalidArgumentError("range mismatch");
  }
  const double size = static_cast<double>(d.size());
  std::vector<double> mixture(e.begin(), e.end());
  for (double& m : mixture) m = (1.0 - tau) * m + tau / size;

  absl::StatusOr<Divergence> kl = KlDivergence(d, mixture);
  if (!kl.ok()) return kl.status();
  absl::StatusOr<double> chi2 = ChiSquaredOnSupport(d, e);
  if (!chi2.ok()) return chi2.status();

  InequalityCheck check;
  check.lhs = AsDouble(*kl);
  check.rhs = (1.0 + std::log(size / tau)) * (*chi2 + tau) + tau;
  check.passed = check.lhs <= check.rhs + kInequalitySlack;
  return check;
}

}  // namespace adasub
