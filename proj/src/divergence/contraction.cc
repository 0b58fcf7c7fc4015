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

#include "adasub/divergence/contraction.h"

#include <vector>

#include "absl/strings/str_cat.h"
#include "adasub/core/combinatorics.h"

namespace adasub {

absl::StatusOr<ContractionResult> VerifyVarianceContraction(std::span<const double> f,
                                                            int n, int w) {
  if (w < 0 || w > n - 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("need 0 <= w <= n - 1; got n=", n, ", w=", w));
  }
  const std::uint64_t count = BinomialCoefficient(n, w);
  if (f.size() != count) {
    return absl::InvalidArgumentError(
        absl::StrCat("f has ", f.size(), " entries, C(n, w) = ", count));
  }

  double mean = 0.0;
  for (double v : f) mean += v;
  mean /= static_cast<double>(count);

  // containing[i]: total of f over subsets containing i.
  std::vector<double> containing(n, 0.0);
  double var_t = 0.0;
  std::size_t rank = 0;
  ForEachSubset(n, w, [&](std::span<const std::size_t> subset) {
    const double v = f[rank++];
    var_t += (v - mean) * (v - mean);
    for (std::size_t i : subset) containing[i] += v;
  });
  var_t /= static_cast<double>(count);

  // Each i is excluded from C(n-1, w) subsets.
  const double excluded = static_cast<double>(BinomialCoefficient(n - 1, w));
  const double total = mean * static_cast<double>(count);
  double var_i = 0.0;
  for (int i = 0; i < n; ++i) {
    const double conditional = (total - containing[i]) / excluded;
    var_i += (conditional - mean) * (conditional - mean);
  }
  var_i /= n;

  ContractionResult result;
  result.lhs = var_i;
  result.rhs = static_cast<double>(w) / (static_cast<double>(n - 1) * (n - w)) * var_t;
  return result;
}

}  // namespace adasub
