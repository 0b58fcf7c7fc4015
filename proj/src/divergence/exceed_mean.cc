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

#include "adasub/divergence/exceed_mean.h"

#include <algorithm>
#include <cmath>

#include "absl/strings/str_cat.h"

namespace adasub {
namespace {

absl::Status CheckDomain(std::span<const double> values, int n) {
  if (n < 1 || static_cast<std::size_t>(n) >= values.size()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "need 1 <= n < |S|; got n=", n, ", |S|=", values.size()));
  }
  for (double v : values) {
    if (!(v >= 0.0 && v <= 1.0)) {
      return absl::InvalidArgumentError(absl::StrCat("value ", v, " outside [0, 1]"));
    }
  }
  return absl::OkStatus();
}

double ExpectedSum(std::span<const double> values, int n) {
  double total = 0.0;
  for (double v : values) total += v;
  return n * total / static_cast<double>(values.size());
}

}  // namespace

double SampleExceedsMeanFloor() { return (2.0 * std::sqrt(3.0) - 3.0) / 13.0; }

absl::StatusOr<ExceedMeanEstimate> SampleExceedsMeanProbe(std::span<const double> values,
                                                          int n, std::uint64_t trials,
                                                          RandomSource& rng) {
  if (absl::Status s = CheckDomain(values, n); !s.ok()) return s;
  if (trials == 0) return absl::InvalidArgumentError("trials must be positive");
  const double threshold = ExpectedSum(values, n) - 1.0;
  SubsetSampler sampler(values.size());
  std::uint64_t hits = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    double sum = 0.0;
    for (std::size_t i : sampler.Draw(n, rng)) sum += values[i];
    if (sum > threshold) ++hits;
  }
  const double p = static_cast<double>(hits) / static_cast<double>(trials);
  return ExceedMeanEstimate{p, std::sqrt(p * (1.0 - p) / static_cast<double>(trials)),
                            false};
}

absl::StatusOr<ExceedMeanEstimate> SampleExceedsMeanExact(std::span<const double> values,
                                                          int n, std::uint64_t cap) {
  if (absl::Status s = CheckDomain(values, n); !s.ok()) return s;
  const std::uint64_t count = BinomialCoefficient(values.size(), n);
  if (count > cap) {
    return absl::ResourceExhaustedError(
        absl::StrCat("C(", values.size(), ", ", n, ") = ", count, " exceeds the cap"));
  }
  const double threshold = ExpectedSum(values, n) - 1.0;
  std::uint64_t hits = 0;
  ForEachSubset(values.size(), n, [&](std::span<const std::size_t> subset) {
    double sum = 0.0;
    for (std::size_t i : subset) sum += values[i];
    if (sum > threshold) ++hits;
  });
  return ExceedMeanEstimate{static_cast<double>(hits) / static_cast<double>(count), 0.0,
                            true};
}

absl::StatusOr<std::vector<NamedExceedMeanProbe>> StandardExceedMeanProbes(
    std::uint64_t seed) {
  std::vector<NamedExceedMeanProbe> probes(3);
  probes[0] = {"all-equal", std::vector<double>(20, 0.5), 7, {}};
  probes[1].name = "half-ones";
  probes[1].values.assign(400, 0.0);
  std::fill(probes[1].values.begin() + 200, probes[1].values.end(), 1.0);
  probes[1].n = 100;
  probes[2].name = "alternating";
  for (int i = 0; i < 10; ++i) probes[2].values.push_back(i % 2);
  probes[2].n = 5;

  const RandomSource root = RandomSource(seed).Split("exceed-mean-probe");
  const std::uint64_t draws[2] = {10'000, 100'000};
  for (int i = 0; i < 2; ++i) {
    RandomSource rng = root.Split(probes[i].name);
    absl::StatusOr<ExceedMeanEstimate> e =
        SampleExceedsMeanProbe(probes[i].values, probes[i].n, draws[i], rng);
    if (!e.ok()) return e.status();
    probes[i].estimate = *e;
  }
  absl::StatusOr<ExceedMeanEstimate> exact =
      SampleExceedsMeanExact(probes[2].values, probes[2].n);
  if (!exact.ok()) return exact.status();
  probes[2].estimate = *exact;
  return probes;
}

}  // namespace adasub
