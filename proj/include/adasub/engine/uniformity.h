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

#ifndef ADASUB_ENGINE_UNIFORMITY_H_
#define ADASUB_ENGINE_UNIFORMITY_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "adasub/core/element.h"
#include "adasub/core/query.h"
#include "adasub/core/random.h"

namespace adasub {

// With probability p*|Y| the result outputs a uniform draw from Y, otherwise
// the output of q. The result is p-uniform and declares p as its floor.
// Explicit laws stay explicit; opaque queries stay opaque. Fails unless
// 0 <= p*|Y| <= 1.
absl::StatusOr<Query> Uniformize(const Query& q, double p);

struct UniformityFailure {
  std::size_t input = 0;
  std::size_t output = 0;
  double mass = 0.0;
  double threshold = 0.0;
};

struct UniformityReport {
  bool passed = true;
  std::size_t inputs_checked = 0;
  std::vector<UniformityFailure> failures;
  std::string note;
};

// Checks the declared floor p on each supplied w-tuple: every output must
// have mass >= p. Explicit laws are read exactly (1e-12 slack); opaque
// queries are estimated from `draws` samples with 5 standard errors of
// slack. A query that declares no floor fails.
UniformityReport SpotCheckUniformity(const Query& q,
                                     std::span<const std::vector<Element>> inputs,
                                     RandomSource& rng, std::uint64_t draws = 100000);

}  // namespace adasub

#endif  // ADASUB_ENGINE_UNIFORMITY_H_
