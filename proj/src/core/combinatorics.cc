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

#include "adasub/core/combinatorics.h"

#include <cassert>
#include <limits>
#include <numeric>
#include <utility>

namespace adasub {
namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

}  // namespace

std::uint64_t BinomialCoefficient(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // Exact at every step: result * (n - k + i) is divisible by i.
    result = result * (n - k + i) / i;
    if (result > kSaturated) return kSaturated;
  }
  return static_cast<std::uint64_t>(result);
}

std::uint64_t SaturatingPower(std::uint64_t base, std::uint64_t exp) {
  unsigned __int128 result = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    result *= base;
    if (result > kSaturated) return kSaturated;
  }
  return static_cast<std::uint64_t>(result);
}

std::uint64_t Factorial(std::uint64_t w) {
  unsigned __int128 result = 1;
  for (std::uint64_t i = 2; i <= w; ++i) {
    result *= i;
    if (result > kSaturated) return kSaturated;
  }
  return static_cast<std::uint64_t>(result);
}

void ForEachSubset(std::size_t n, std::size_t w,
                   const std::function<void(std::span<const std::size_t>)>& visit) {
  if (w > n) return;
  std::vector<std::size_t> index(w);
  std::iota(index.begin(), index.end(), std::size_t{0});
  while (true) {
    visit(index);
    // Advance the rightmost index that still has room.
    std::size_t i = w;
    while (i > 0 && index[i - 1] == n - w + (i - 1)) --i;
    if (i == 0) return;
    ++index[i - 1];
    for (std::size_t j = i; j < w; ++j) index[j] = index[j - 1] + 1;
  }
}

void ForEachTuple(std::size_t m, std::size_t w,
                  const std::function<void(std::span<const std::size_t>)>& visit) {
  if (m == 0 && w > 0) return;
  std::vector<std::size_t> digits(w, 0);
  while (true) {
    visit(digits);
    std::size_t i = 0;
    while (i < w && ++digits[i] == m) digits[i++] = 0;
    if (i == w) return;
  }
}

SubsetSampler::SubsetSampler(std::size_t n) : permutation_(n) {
  std::iota(permutation_.begin(), permutation_.end(), std::size_t{0});
}

std::span<const std::size_t> SubsetSampler::Draw(std::size_t w,
                                                 RandomSource& rng) {
  const std::size_t n = permutation_.size();
  assert(w <= n);
  swaps_.resize(w);
  drawn_.resize(w);
  for (std::size_t i = 0; i < w; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.UniformInt(n - i));
    std::swap(permutation_[i], permutation_[j]);
    swaps_[i] = j;
    drawn_[i] = permutation_[i];
  }
  // Undo in reverse so the buffer is the identity again.
  for (std::size_t i = w; i-- > 0;) std::swap(permutation_[i], permutation_[swaps_[i]]);
  return drawn_;
}

}  // namespace adasub
