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

#ifndef ADASUB_CORE_RANDOM_H_
#define ADASUB_CORE_RANDOM_H_

#include <array>
#include <cstdint>
#include <limits>
#include <string_view>

namespace adasub {

// A counter-based, splittable pseudo-random stream.
//
// A stream is identified by a master seed and a path of split labels. The
// path is folded into a 64-bit Philox key, and draws walk a 128-bit counter,
// so two sources with the same (seed, path) produce identical streams no
// matter what their parents have consumed. Splitting never advances the
// parent.
//
// Satisfies UniformRandomBitGenerator, but the helpers below (Uniform,
// UniformInt, Bernoulli) are preferred over <random> distributions because
// their output is fixed across standard library implementations.
class RandomSource {
 public:
  using result_type = std::uint64_t;

  explicit RandomSource(std::uint64_t seed);

  // Child stream for `label`. Children with distinct labels are independent.
  RandomSource Split(std::uint64_t label) const;
  RandomSource Split(std::string_view label) const;

  result_type operator()();
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  // Uniform double in [0, 1) with 53 random bits.
  double Uniform();
  // Uniform integer in [0, bound). `bound` must be positive.
  std::uint64_t UniformInt(std::uint64_t bound);
  // True with probability `p` (clamped to [0, 1]).
  bool Bernoulli(double p);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t key() const { return key_; }
  int depth() const { return depth_; }

  friend bool operator==(const RandomSource& a, const RandomSource& b) {
    return a.seed_ == b.seed_ && a.key_ == b.key_ && a.depth_ == b.depth_ &&
           a.counter_ == b.counter_ && a.buffered_ == b.buffered_;
  }

 private:
  RandomSource(std::uint64_t seed, std::uint64_t key, int depth);
  void Refill();

  std::uint64_t seed_;
  std::uint64_t key_;
  int depth_;
  std::uint64_t counter_ = 0;
  std::array<std::uint64_t, 2> buffer_{};
  int buffered_ = 0;
};

// 64-bit finalizer (MurmurHash3 fmix64). Exposed for label hashing.
std::uint64_t Mix64(std::uint64_t x);

}  // namespace adasub

#endif  // ADASUB_CORE_RANDOM_H_
