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

#include "adasub/mechanisms/median_mechanism.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "absl/strings/str_cat.h"
#include "adasub/mechanisms/cost.h"

namespace adasub {

bool IsApproximateMedian(const ResponsePmf& law, double y, double mass) {
  double below = 0.0;
  double above = 0.0;
  for (std::size_t j = 0; j < law.size(); ++j) {
    if (law.range[j] <= y) below += law.masses[j];
    if (law.range[j] >= y) above += law.masses[j];
  }
  constexpr double kTolerance = 1e-12;
  return below >= mass - kTolerance && above >= mass - kTolerance;
}

int CeilLog2(std::int64_t size) {
  int bits = 0;
  while ((std::int64_t{1} << bits) < size) ++bits;
  return bits;
}

absl::StatusOr<MedianParams> ComputeMedianParams(std::int64_t n, std::int64_t T,
                                                 std::span<const int> w_list,
                                                 std::span<const std::int64_t> r_sizes,
                                                 double delta, const MedianConstants& c) {
  if (n < 1 || T < 1) {
    return absl::InvalidArgumentError(absl::StrCat("need n, T >= 1; got n=", n, ", T=", T));
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    return absl::InvalidArgumentError(absl::StrCat("delta ", delta, " outside (0, 1)"));
  }
  if (w_list.empty() || r_sizes.empty()) {
    return absl::InvalidArgumentError("arity and range-size lists must be nonempty");
  }
  int w_max = 0;
  double w_sum = 0.0;
  for (int w : w_list) {
    if (w < 1) return absl::InvalidArgumentError(absl::StrCat("arity ", w, " < 1"));
    w_max = std::max(w_max, w);
    w_sum += w;
  }
  std::int64_t r_max = 0;
  for (std::int64_t r : r_sizes) {
    if (r < 1) return absl::InvalidArgumentError(absl::StrCat("range size ", r, " < 1"));
    r_max = std::max(r_max, r);
  }

  MedianParams params;
  const int rounds = CeilLog2(r_max);
  params.k = 2;
  if (rounds > 0) {
    const double log_term = std::log(2.0 * static_cast<double>(T) * rounds / delta);
    params.k = std::max<std::int64_t>(
        2, static_cast<std::int64_t>(std::ceil(c.c_m * log_term)));
  }
  params.advisory_n = static_cast<double>(params.k) * std::sqrt(w_max * w_sum);
  params.group_size = n / params.k;
  params.max_flip = params.group_size > 0
                        ? static_cast<double>(w_max) / static_cast<double>(params.group_size)
                        : 1.0;
  return params;
}

absl::StatusOr<MedianSession> MedianSession::Create(Dataset sample,
                                                    const MedianOptions& options,
                                                    RandomSource rng, BudgetLedger ledger) {
  if (options.k < 1) return absl::InvalidArgumentError("k must be positive");
  if (static_cast<std::size_t>(options.k) > sample.size()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "cannot split ", sample.size(), " elements into ", options.k, " groups"));
  }
  return MedianSession(std::move(sample), options, std::move(rng), std::move(ledger));
}

MedianSession::MedianSession(Dataset sample, const MedianOptions& options,
                             RandomSource rng, BudgetLedger ledger)
    : sample_(std::move(sample)),
      options_(options),
      rng_(std::move(rng)),
      ledger_(std::move(ledger)) {
  const std::size_t n = sample_.size();
  const std::size_t k = static_cast<std::size_t>(options_.k);
  const std::size_t base = n / k;
  const std::size_t larger = n % k;
  std::size_t start = 0;
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t size = base + (i < larger ? 1 : 0);
    std::vector<std::size_t> positions(size);
    std::iota(positions.begin(), positions.end(), start);
    start += size;
    groups_.emplace_back(sample_.elements(), std::move(positions));
  }
  subsamplers_.reserve(k);
  for (const SampleView& g : groups_) subsamplers_.emplace_back(g);
}

absl::StatusOr<double> MedianSession::QueryCost(int arity, std::size_t range_size) const {
  const int rounds = CeilLog2(static_cast<std::int64_t>(range_size));
  double per_round = 0.0;
  for (const SampleView& g : groups_) {
    const std::int64_t m = static_cast<std::int64_t>(g.size());
    const double p = options_.add_noise ? static_cast<double>(arity) / m : 0.0;
    absl::StatusOr<double> cost = CostUniform(m, arity, 2, p);
    if (!cost.ok()) return cost.status();
    per_round += *cost;
  }
  return rounds * per_round;
}

absl::StatusOr<double> MedianSession::Answer(const Query& phi) {
  const std::vector<double>& range = phi.range;
  if (range.empty()) return absl::InvalidArgumentError("empty range");
  for (std::size_t j = 1; j < range.size(); ++j) {
    if (!(range[j - 1] < range[j])) {
      return absl::InvalidArgumentError(
          absl::StrCat("range of ", phi.id, " is not strictly increasing"));
    }
  }
  const std::size_t smallest = groups_.back().size();
  if (phi.arity < 1 || static_cast<std::size_t>(phi.arity) >= smallest) {
    return absl::InvalidArgumentError(absl::StrCat(
        "arity ", phi.arity, " needs groups larger than it; smallest has ", smallest));
  }
  absl::StatusOr<double> cost = QueryCost(phi.arity, range.size());
  if (!cost.ok()) return cost.status();
  if (absl::Status s = ledger_.CanCharge(*cost); !s.ok()) return s;

  const RandomSource query_rng = rng_.Split(transcript_.size() + 1);
  const std::int64_t needed = (options_.k + 1) / 2;
  std::size_t lo = 0;
  std::size_t hi = range.size() - 1;
  for (std::uint64_t round = 0; lo < hi; ++round) {
    const std::size_t probe = (lo + hi + 1) / 2;
    const double r = range[probe];
    const RandomSource round_rng = query_rng.Split(round);
    std::int64_t yes = 0;
    for (std::size_t i = 0; i < groups_.size(); ++i) {
      RandomSource vote_rng = round_rng.Split(i);
      absl::StatusOr<double> y = subsamplers_[i].Answer(phi, vote_rng);
      if (!y.ok()) return y.status();
      bool vote = *y >= r;
      if (options_.add_noise) {
        const double flip = static_cast<double>(phi.arity) /
                            static_cast<double>(groups_[i].size());
        if (vote_rng.Bernoulli(flip)) vote = !vote;
      }
      yes += vote ? 1 : 0;
    }
    if (yes >= needed) {
      lo = probe;
    } else {
      hi = probe - 1;
    }
  }
  const double answer = range[lo];
  if (absl::Status s = ledger_.Charge(*cost); !s.ok()) return s;
  if (absl::Status s = transcript_.Append(phi.id, answer, *cost); !s.ok()) return s;
  return answer;
}

}  // namespace adasub
