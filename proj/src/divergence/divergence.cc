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

#include "adasub/divergence/divergence.h"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>

#include "absl/strings/str_cat.h"

namespace adasub {
namespace {

absl::Status CheckAligned(std::span<const double> d, std::span<const double> e) {
  if (d.size() != e.size()) {
    return absl::InvalidArgumentError(
        absl::StrCat("range mismatch: ", d.size(), " vs ", e.size(), " outcomes"));
  }
  return absl::OkStatus();
}

absl::Status CheckAligned(const ResponsePmf& d, const ResponsePmf& e) {
  if (d.range != e.range) return absl::InvalidArgumentError("range mismatch");
  return CheckAligned(d.masses, e.masses);
}

}  // namespace

double Divergence::value() const {
  assert(!infinite_);
  return value_;
}

std::string Divergence::ToString() const {
  return infinite_ ? "inf" : absl::StrCat(value_);
}

absl::StatusOr<Divergence> KlDivergence(std::span<const double> d,
                                        std::span<const double> e) {
  if (absl::Status s = CheckAligned(d, e); !s.ok()) return s;
  double total = 0.0;
  for (std::size_t y = 0; y < d.size(); ++y) {
    if (d[y] <= 0.0) continue;
    if (e[y] <= 0.0) return Divergence::Infinite();
    total += d[y] * std::log(d[y] / e[y]);
  }
  // Rounding can leave a tiny negative total for equal inputs.
  return Divergence::Finite(std::max(0.0, total));
}

absl::StatusOr<Divergence> KlDivergence(const ResponsePmf& d, const ResponsePmf& e) {
  if (absl::Status s = CheckAligned(d, e); !s.ok()) return s;
  return KlDivergence(d.masses, e.masses);
}

absl::StatusOr<Divergence> ChiSquaredDivergence(std::span<const double> d,
                                                std::span<const double> e) {
  if (absl::Status s = CheckAligned(d, e); !s.ok()) return s;
  for (std::size_t y = 0; y < d.size(); ++y) {
    if (d[y] <= 0.0 && e[y] > 0.0) return Divergence::Infinite();
  }
  absl::StatusOr<double> total = ChiSquaredOnSupport(d, e);
  if (!total.ok()) return total.status();
  return Divergence::Finite(*total);
}

absl::StatusOr<Divergence> ChiSquaredDivergence(const ResponsePmf& d,
                                                const ResponsePmf& e) {
  if (absl::Status s = CheckAligned(d, e); !s.ok()) return s;
  return ChiSquaredDivergence(d.masses, e.masses);
}

absl::StatusOr<double> ChiSquaredOnSupport(std::span<const double> d,
                                           std::span<const double> e) {
  if (absl::Status s = CheckAligned(d, e); !s.ok()) return s;
  double total = 0.0;
  for (std::size_t y = 0; y < d.size(); ++y) {
    if (d[y] <= 0.0) continue;
    const double gap = d[y] - e[y];
    total += gap * gap / d[y];
  }
  return total;
}

}  // namespace adasub
