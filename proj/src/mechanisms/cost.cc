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

#include "adasub/mechanisms/cost.h"

#include <algorithm>
#include <cmath>

#include "absl/strings/str_cat.h"

namespace adasub {
namespace {

absl::Status CheckArity(std::int64_t n, int w, int ysize) {
  if (w < 1 || w >= n) {
    return absl::InvalidArgumentError(
        absl::StrCat("cost needs 1 <= w < n; got w=", w, ", n=", n));
  }
  if (ysize < 1) return absl::InvalidArgumentError("|Y| < 1");
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<double> CostBasic(std::int64_t n, int w, int ysize) {
  if (absl::Status s = CheckArity(n, w, ysize); !s.ok()) return s;
  const double nd = static_cast<double>(n);
  return static_cast<double>(w) * ysize * std::log(nd) / (nd - w);
}

absl::StatusOr<double> CostUniform(std::int64_t n, int w, int ysize, double p) {
  if (absl::Status s = CheckArity(n, w, ysize); !s.ok()) return s;
  if (!(p >= 0.0)) return absl::InvalidArgumentError(absl::StrCat("p ", p, " < 0"));
  const double nd = static_cast<double>(n);
  double factor = std::log(nd);
  if (p > 0.0) factor = std::min(factor, 1.0 + std::log1p(w / (nd * p)));
  return static_cast<double>(w) * ysize / (nd - w) * factor;
}

absl::StatusOr<double> CostHighProbability(std::int64_t n, int ysize, double p,
                                           double delta) {
  if (n < 1) return absl::InvalidArgumentError(absl::StrCat("n ", n, " < 1"));
  if (ysize < 1) return absl::InvalidArgumentError("|Y| < 1");
  if (!(delta > 0.0 && delta < 1.0)) {
    return absl::InvalidArgumentError(absl::StrCat("delta ", delta, " outside (0, 1)"));
  }
  if (!(p >= 0.0)) return absl::InvalidArgumentError(absl::StrCat("p ", p, " < 0"));
  const double nd = static_cast<double>(n);
  double factor = std::log(nd);
  if (p > 0.0) factor = std::min(factor, 1.0 + std::log1p(std::log(1.0 / delta) / (nd * p)));
  return ysize / nd * factor;
}

}  // namespace adasub
