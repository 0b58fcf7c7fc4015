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

#include "adasub/divergence/stability.h"

#include <cmath>

#include "absl/strings/str_cat.h"
#include "adasub/engine/response_pmf.h"

namespace adasub {
namespace {

absl::Status CheckLeaveOneOut(const Query& q, const Dataset& sample) {
  const int n = static_cast<int>(sample.size());
  if (q.arity < 1 || q.arity > n - 1) {
    return absl::InvalidArgumentError(absl::StrCat(
        "leave-one-out needs 1 <= w <= n - 1; got w=", q.arity, ", n=", n));
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<double> ChiSquaredStabilityBound(int n, int w, int ysize) {
  if (w < 1 || w > n - 1 || ysize < 1) {
    return absl::InvalidArgumentError(absl::StrCat(
        "need 1 <= w <= n - 1 and |Y| >= 1; got n=", n, ", w=", w, ", |Y|=", ysize));
  }
  return static_cast<double>(w) * (ysize - 1) /
         (static_cast<double>(n - 1) * (n - w));
}

absl::StatusOr<StabilityReport> MeasureLeaveOneOutChiSquared(const Query& q,
                                                             const Dataset& sample,
                                                             std::uint64_t cap) {
  if (absl::Status s = CheckLeaveOneOut(q, sample); !s.ok()) return s;
  absl::StatusOr<ResponsePmf> full = ExactResponsePmf(q, sample.View(), cap);
  if (!full.ok()) return full.status();

  const int n = static_cast<int>(sample.size());
  StabilityReport report;
  report.per_index.reserve(n);
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    absl::StatusOr<ResponsePmf> loo = ExactResponsePmf(q, sample.WithoutIndex(i), cap);
    if (!loo.ok()) return loo.status();
    absl::StatusOr<Divergence> chi2 = ChiSquaredDivergence(full->masses, loo->masses);
    if (!chi2.ok()) return chi2.status();
    // S_{-i}'s subsets are subsets of S, so the support condition holds.
    if (chi2->is_infinite()) {
      return absl::InternalError("leave-one-out law escapes the support of the full law");
    }
    report.per_index.push_back(chi2->value());
    total += chi2->value();
  }
  report.measured = total / n;

  for (double m : full->masses) report.effective_range += m > 0.0 ? 1 : 0;
  report.bound = *ChiSquaredStabilityBound(n, q.arity, static_cast<int>(q.range_size()));
  report.effective_bound = *ChiSquaredStabilityBound(n, q.arity, report.effective_range);
  return report;
}

absl::StatusOr<Divergence> MeasureLeaveOneOutKl(const Query& q, const Dataset& sample,
                                                double mix, std::uint64_t cap) {
  if (!(mix >= 0.0 && mix <= 1.0)) {
    return absl::InvalidArgumentError(absl::StrCat("mix ", mix, " outside [0, 1]"));
  }
  if (absl::Status s = CheckLeaveOneOut(q, sample); !s.ok()) return s;
  absl::StatusOr<ResponsePmf> full = ExactResponsePmf(q, sample.View(), cap);
  if (!full.ok()) return full.status();

  const int n = static_cast<int>(sample.size());
  const double uniform = mix / static_cast<double>(q.range_size());
  double total = 0.0;
  bool infinite = false;
  for (int i = 0; i < n; ++i) {
    absl::StatusOr<ResponsePmf> loo = ExactResponsePmf(q, sample.WithoutIndex(i), cap);
    if (!loo.ok()) return loo.status();
    for (double& m : loo->masses) m = (1.0 - mix) * m + uniform;
    absl::StatusOr<Divergence> kl = KlDivergence(full->masses, loo->masses);
    if (!kl.ok()) return kl.status();
    if (kl->is_infinite()) {
      infinite = true;
    } else {
      total += kl->value();
    }
  }
  if (infinite) return Divergence::Infinite();
  return Divergence::Finite(total / n);
}

absl::StatusOr<double> AlklBoundGeneral(double eps, int ysize) {
  if (!(eps > 0.0)) return absl::InvalidArgumentError(absl::StrCat("eps ", eps, " <= 0"));
  if (ysize < 1) return absl::InvalidArgumentError("|Y| < 1");
  return eps * (3.0 + 2.0 * std::log(ysize / eps));
}

absl::StatusOr<double> AlklBoundUniform(double eps, int w, int n, double p) {
  if (!(p > 0.0)) return absl::InvalidArgumentError(absl::StrCat("p ", p, " <= 0"));
  if (w < 1 || n < 1) return absl::InvalidArgumentError("need w >= 1 and n >= 1");
  return eps * (1.0 + std::log1p(static_cast<double>(w) / (n * p)));
}

}  // namespace adasub
