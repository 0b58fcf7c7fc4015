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

#include "adasub/engine/uniformity.h"

#include <cmath>
#include <numeric>

#include "absl/container/inlined_vector.h"
#include "absl/strings/str_cat.h"
#include "adasub/core/dataset.h"

namespace adasub {

absl::StatusOr<Query> Uniformize(const Query& q, double p) {
  const double size = static_cast<double>(q.range_size());
  const double mix = p * size;
  if (!(p >= 0.0) || mix > 1.0 + 1e-12) {
    return absl::InvalidArgumentError(
        absl::StrCat("uniformity p=", p, " needs 0 <= p*|Y| <= 1, |Y|=", size));
  }
  if (p == 0.0) return q;
  Query out = q;
  out.id = absl::StrCat("unif(", p, "):", q.id);
  out.uniformity_floor = p;
  if (q.is_opaque()) {
    out.evaluator = SamplingEvaluator(
        [base = q, mix](TupleView t, RandomSource& rng) -> std::size_t {
          if (rng.Bernoulli(mix)) return rng.UniformInt(base.range_size());
          return base.Sample(t, rng);
        });
    return out;
  }
  out.evaluator = DistributionEvaluator(
      [base = q, p, mix](TupleView t, std::span<double> masses) {
        // Validity of base's outputs was checked when it was deterministic;
        // an out-of-range index here leaves the mixture's uniform part only.
        if (!base.Distribution(t, masses).ok()) {
          std::fill(masses.begin(), masses.end(), 0.0);
        }
        for (double& m : masses) m = (1.0 - mix) * m + p;
      });
  return out;
}

UniformityReport SpotCheckUniformity(const Query& q,
                                     std::span<const std::vector<Element>> inputs,
                                     RandomSource& rng, std::uint64_t draws) {
  UniformityReport report;
  const double p = q.uniformity_floor;
  if (!(p > 0.0)) {
    report.passed = false;
    report.note = absl::StrCat("query ", q.id, " declares no uniformity floor");
    return report;
  }
  absl::InlinedVector<double, 8> masses(q.range_size());
  std::vector<std::size_t> positions;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const std::vector<Element>& tuple = inputs[i];
    positions.resize(tuple.size());
    std::iota(positions.begin(), positions.end(), std::size_t{0});
    TupleView view(tuple, positions);
    double slack = 1e-12;
    if (q.is_opaque()) {
      std::fill(masses.begin(), masses.end(), 0.0);
      RandomSource stream = rng.Split(i);
      for (std::uint64_t d = 0; d < draws; ++d) {
        const std::size_t y = q.Sample(view, stream);
        if (y < masses.size()) masses[y] += 1.0;
      }
      for (double& m : masses) m /= static_cast<double>(draws);
      slack = 5.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(draws));
    } else if (!q.Distribution(view, std::span<double>(masses)).ok()) {
      report.failures.push_back({i, q.range_size(), 0.0, p});
      ++report.inputs_checked;
      continue;
    }
    for (std::size_t y = 0; y < masses.size(); ++y) {
      if (masses[y] < p - slack) report.failures.push_back({i, y, masses[y], p - slack});
    }
    ++report.inputs_checked;
  }
  report.passed = report.failures.empty();
  return report;
}

}  // namespace adasub
