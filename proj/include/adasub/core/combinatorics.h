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

#ifndef ADASUB_CORE_COMBINATORICS_H_
#define ADASUB_CORE_COMBINATORICS_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "adasub/core/random.h"

namespace adasub {

// Default ceiling on the number of subsets/tuples an exact routine will
// enumerate before it needs a Monte Carlo budget.
inline constexpr std::uint64_t kDefaultEnumerationCap = 2'000'000;

// C(n, k), saturating at UINT64_MAX.
std::uint64_t BinomialCoefficient(std::uint64_t n, std::uint64_t k);
// base^exp, saturating at UINT64_MAX.
std::uint64_t SaturatingPower(std::uint64_t base, std::uint64_t exp);
// w!, saturating.
std::uint64_t Factorial(std::uint64_t w);

// Visits every w-subset of {0, ..., n-1} in lexicographic order, as a sorted
// index list.
void ForEachSubset(std::size_t n, std::size_t w,
                   const std::function<void(std::span<const std::size_t>)>& visit);

// Visits every ordered w-tuple over {0, ..., m-1} (odometer order).
void ForEachTuple(std::size_t m, std::size_t w,
                  const std::function<void(std::span<const std::size_t>)>& visit);

// Draws ordered w-tuples of distinct positions uniformly, by a partial
// Fisher-Yates shuffle over a permutation buffer that is restored after
// every draw: O(w) per draw after O(n) construction.
class SubsetSampler {
 public:
  explicit SubsetSampler(std::size_t n);

  std::size_t population() const { return permutation_.size(); }

  // The returned span is valid until the next call. Requires w <= n.
  std::span<const std::size_t> Draw(std::size_t w, RandomSource& rng);

 private:
  std::vector<std::size_t> permutation_;
  std::vector<std::size_t> swaps_;
  std::vector<std::size_t> drawn_;
};

}  // namespace adasub

#endif  // ADASUB_CORE_COMBINATORICS_H_
