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

#include "adasub/core/dataset.h"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numeric>

#include "absl/container/flat_hash_set.h"
#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace adasub {

absl::StatusOr<Dataset> Dataset::Create(std::vector<Element> elements) {
  if (elements.empty()) {
    return absl::InvalidArgumentError("a dataset needs at least one element");
  }
  return Dataset(
      std::make_shared<const std::vector<Element>>(std::move(elements)));
}

Dataset Dataset::Of(std::vector<Element> elements) {
  assert(!elements.empty());
  return Dataset(
      std::make_shared<const std::vector<Element>>(std::move(elements)));
}

SampleView Dataset::View() const {
  std::vector<std::size_t> positions(size());
  std::iota(positions.begin(), positions.end(), std::size_t{0});
  return SampleView(elements(), std::move(positions));
}

SampleView Dataset::WithoutIndex(std::size_t i) const {
  assert(i < size());
  std::vector<std::size_t> positions;
  positions.reserve(size() - 1);
  for (std::size_t j = 0; j < size(); ++j) {
    if (j != i) positions.push_back(j);
  }
  return SampleView(elements(), std::move(positions));
}

absl::StatusOr<GroundTruth> GroundTruth::Create(std::vector<Element> support,
                                                std::vector<double> masses) {
  if (support.empty()) {
    return absl::InvalidArgumentError("empty support");
  }
  if (support.size() != masses.size()) {
    return absl::InvalidArgumentError(
        absl::StrCat("support has ", support.size(), " entries but ",
                     masses.size(), " masses"));
  }
  double total = 0.0;
  for (double m : masses) {
    if (!(m >= 0.0)) {
      return absl::InvalidArgumentError(absl::StrCat("negative mass ", m));
    }
    total += m;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    return absl::InvalidArgumentError(
        absl::StrCat("masses sum to ", total, ", not 1"));
  }
  absl::flat_hash_set<Element, ElementHash> seen;
  for (const Element& e : support) {
    if (!seen.insert(e).second) {
      return absl::InvalidArgumentError(
          absl::StrCat("duplicate support entry ", ElementToString(e)));
    }
  }
  return GroundTruth(std::move(support), std::move(masses));
}

GroundTruth::GroundTruth(std::vector<Element> support, std::vector<double> masses)
    : support_(std::move(support)), masses_(std::move(masses)) {
  cumulative_.resize(masses_.size());
  std::partial_sum(masses_.begin(), masses_.end(), cumulative_.begin());
}

Dataset GroundTruth::Sample(std::size_t n, RandomSource& rng) const {
  std::vector<Element> draws;
  draws.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = rng.Uniform() * cumulative_.back();
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    std::size_t index = static_cast<std::size_t>(it - cumulative_.begin());
    // Skip zero-mass entries that sit at the end of the cumulative table.
    index = std::min(index, support_.size() - 1);
    while (masses_[index] == 0.0 && index > 0) --index;
    draws.push_back(support_[index]);
  }
  return Dataset::Of(std::move(draws));
}

}  // namespace adasub
