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

#include "adasub/core/expectation.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "absl/container/inlined_vector.h"
#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace adasub {
namespace {

absl::Status CheckArity(int arity, std::size_t n) {
  if (arity < 1) {
    return absl::InvalidArgumentError(absl::StrCat("arity ", arity, " < 1"));
  }
  if (static_cast<std::size_t>(arity) > n) {
    return absl::InvalidArgumentError(
        absl::StrCat("arity ", arity, " exceeds sample size ", n));
  }
  return absl::OkStatus();
}

absl::Status CapExceeded(std::uint64_t work, std::uint64_t cap) {
  return absl::ResourceExhaustedError(absl::StrCat(
      "exact evaluation needs ", work, " terms, over the cap of ", cap,
      ", and no Monte Carlo budget was supplied"));
}

template <typename ValueFn>
absl::StatusOr<double> AverageOverSample(const SampleView& s, int arity,
                                         bool order_invariant, ValueFn value) {
  double total = 0.0;
  std::uint64_t count = 0;
  absl::Status status =
      ForEachSampleTuple(s, arity, order_invariant, [&](TupleView t) -> absl::Status {
        absl::StatusOr<double> v = value(t);
        if (!v.ok()) return v.status();
        total += *v;
        ++count;
        return absl::OkStatus();
      });
  if (!status.ok()) return status;
  return total / static_cast<double>(count);
}

template <typename ValueFn>
absl::StatusOr<Estimate> MonteCarloOverSample(const SampleView& s, int arity,
                                              const EnumerationOptions& options,
                                              ValueFn value) {
  RandomSource rng(options.monte_carlo_seed);
  SubsetSampler sampler(s.size());
  std::vector<std::size_t> positions(static_cast<std::size_t>(arity));
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::uint64_t draw = 0; draw < options.monte_carlo_draws; ++draw) {
    std::span<const std::size_t> idx = sampler.Draw(positions.size(), rng);
    for (std::size_t j = 0; j < positions.size(); ++j) {
      positions[j] = s.positions()[idx[j]];
    }
    absl::StatusOr<double> v = value(TupleView(s.pool(), positions), rng);
    if (!v.ok()) return v.status();
    sum += *v;
    sum_sq += *v * *v;
  }
  const double draws = static_cast<double>(options.monte_carlo_draws);
  const double mean = sum / draws;
  const double var = std::max(0.0, sum_sq / draws - mean * mean);
  return Estimate{mean, std::sqrt(var / draws), false};
}

template <typename ValueFn>
absl::StatusOr<double> AverageOverPopulation(const GroundTruth& d, int arity,
                                             ValueFn value) {
  double total = 0.0;
  absl::Status status =
      ForEachPopulationTuple(d, arity, [&](TupleView t, double weight) -> absl::Status {
        absl::StatusOr<double> v = value(t);
        if (!v.ok()) return v.status();
        total += weight * *v;
        return absl::OkStatus();
      });
  if (!status.ok()) return status;
  return total;
}

template <typename ValueFn>
absl::StatusOr<Estimate> MonteCarloOverPopulation(const GroundTruth& d, int arity,
                                                  const EnumerationOptions& options,
                                                  ValueFn value) {
  RandomSource rng(options.monte_carlo_seed);
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::uint64_t draw = 0; draw < options.monte_carlo_draws; ++draw) {
    Dataset tuple = d.Sample(static_cast<std::size_t>(arity), rng);
    SampleView view = tuple.View();
    absl::StatusOr<double> v = value(TupleView(view.pool(), view.positions()), rng);
    if (!v.ok()) return v.status();
    sum += *v;
    sum_sq += *v * *v;
  }
  const double draws = static_cast<double>(options.monte_carlo_draws);
  const double mean = sum / draws;
  const double var = std::max(0.0, sum_sq / draws - mean * mean);
  return Estimate{mean, std::sqrt(var / draws), false};
}

absl::StatusOr<double> CheckedTestValue(const TestQuery& q, TupleView t) {
  const double v = q(t);
  if (!(v >= 0.0 && v <= 1.0)) {
    return absl::OutOfRangeError(
        absl::StrCat("test query ", q.id, " returned ", v, " outside [0, 1]"));
  }
  return v;
}

absl::StatusOr<double> QueryMean(const Query& q, TupleView t) {
  absl::InlinedVector<double, 8> masses(q.range_size());
  absl::Status status = q.Distribution(t, std::span<double>(masses));
  if (!status.ok()) return status;
  double mean = 0.0;
  for (std::size_t j = 0; j < masses.size(); ++j) mean += q.range[j] * masses[j];
  return mean;
}

}  // namespace

std::uint64_t SampleEnumerationSize(std::size_t n, int arity, bool order_invariant) {
  const std::uint64_t subsets = BinomialCoefficient(n, arity);
  if (order_invariant) return subsets;
  const std::uint64_t orderings = Factorial(arity);
  if (subsets != 0 &&
      orderings > std::numeric_limits<std::uint64_t>::max() / subsets) {
    return std::numeric_limits<std::uint64_t>::max();
  }
  return subsets * orderings;
}

absl::Status ForEachSampleTuple(const SampleView& s, int arity, bool order_invariant,
                                const std::function<absl::Status(TupleView)>& visit) {
  const std::size_t w = static_cast<std::size_t>(arity);
  std::vector<std::size_t> subset_positions(w);
  std::vector<std::size_t> ordered(w);
  std::vector<std::size_t> perm(w);
  absl::Status status;
  ForEachSubset(s.size(), w, [&](std::span<const std::size_t> idx) {
    if (!status.ok()) return;
    for (std::size_t j = 0; j < w; ++j) subset_positions[j] = s.positions()[idx[j]];
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    do {
      for (std::size_t j = 0; j < w; ++j) ordered[j] = subset_positions[perm[j]];
      status = visit(TupleView(s.pool(), ordered));
      if (!status.ok()) return;
    } while (!order_invariant && std::next_permutation(perm.begin(), perm.end()));
  });
  return status;
}

absl::Status ForEachPopulationTuple(
    const GroundTruth& d, int arity,
    const std::function<absl::Status(TupleView, double)>& visit) {
  absl::Status status;
  ForEachTuple(d.size(), static_cast<std::size_t>(arity),
               [&](std::span<const std::size_t> idx) {
                 if (!status.ok()) return;
                 double weight = 1.0;
                 for (std::size_t j : idx) weight *= d.masses()[j];
                 if (weight == 0.0) return;
                 status = visit(TupleView(d.support(), idx), weight);
               });
  return status;
}

absl::StatusOr<Estimate> ExpectationOnSample(const TestQuery& q,
                                             const SampleView& sample,
                                             const EnumerationOptions& options) {
  if (absl::Status s = CheckArity(q.arity, sample.size()); !s.ok()) return s;
  auto value = [&q](TupleView t) { return CheckedTestValue(q, t); };
  const std::uint64_t work = SampleEnumerationSize(sample.size(), q.arity, q.order_invariant);
  if (work <= options.cap) {
    absl::StatusOr<double> mean =
        AverageOverSample(sample, q.arity, q.order_invariant, value);
    if (!mean.ok()) return mean.status();
    return Estimate{*mean, 0.0, true};
  }
  if (options.monte_carlo_draws == 0) return CapExceeded(work, options.cap);
  return MonteCarloOverSample(sample, q.arity, options,
                              [&value](TupleView t, RandomSource&) { return value(t); });
}

absl::StatusOr<Estimate> ExpectationOnSample(const Query& q,
                                             const SampleView& sample,
                                             const EnumerationOptions& options) {
  if (absl::Status s = CheckArity(q.arity, sample.size()); !s.ok()) return s;
  const std::uint64_t work = SampleEnumerationSize(sample.size(), q.arity, q.order_invariant);
  if (work <= options.cap && !q.is_opaque()) {
    absl::StatusOr<double> mean = AverageOverSample(
        sample, q.arity, q.order_invariant, [&q](TupleView t) { return QueryMean(q, t); });
    if (!mean.ok()) return mean.status();
    return Estimate{*mean, 0.0, true};
  }
  if (options.monte_carlo_draws == 0) return CapExceeded(work, options.cap);
  return MonteCarloOverSample(
      sample, q.arity, options,
      [&q](TupleView t, RandomSource& rng) -> absl::StatusOr<double> {
        const std::size_t y = q.Sample(t, rng);
        if (y >= q.range_size()) {
          return absl::OutOfRangeError(
              absl::StrCat("query ", q.id, " output index ", y, " outside Y"));
        }
        return q.range[y];
      });
}

absl::StatusOr<Estimate> ExpectationOnPopulation(const TestQuery& q,
                                                 const GroundTruth& d,
                                                 const EnumerationOptions& options) {
  if (q.arity < 1) return absl::InvalidArgumentError("arity < 1");
  auto value = [&q](TupleView t) { return CheckedTestValue(q, t); };
  const std::uint64_t work = SaturatingPower(d.size(), q.arity);
  if (work <= options.cap) {
    absl::StatusOr<double> mean = AverageOverPopulation(d, q.arity, value);
    if (!mean.ok()) return mean.status();
    return Estimate{*mean, 0.0, true};
  }
  if (options.monte_carlo_draws == 0) return CapExceeded(work, options.cap);
  return MonteCarloOverPopulation(
      d, q.arity, options, [&value](TupleView t, RandomSource&) { return value(t); });
}

absl::StatusOr<Estimate> ExpectationOnPopulation(const Query& q,
                                                 const GroundTruth& d,
                                                 const EnumerationOptions& options) {
  if (q.arity < 1) return absl::InvalidArgumentError("arity < 1");
  const std::uint64_t work = SaturatingPower(d.size(), q.arity);
  if (work <= options.cap && !q.is_opaque()) {
    absl::StatusOr<double> mean = AverageOverPopulation(
        d, q.arity, [&q](TupleView t) { return QueryMean(q, t); });
    if (!mean.ok()) return mean.status();
    return Estimate{*mean, 0.0, true};
  }
  if (options.monte_carlo_draws == 0) return CapExceeded(work, options.cap);
  return MonteCarloOverPopulation(
      d, q.arity, options,
      [&q](TupleView t, RandomSource& rng) -> absl::StatusOr<double> {
        return q.range[q.Sample(t, rng)];
      });
}

absl::StatusOr<Moments> PopulationMoments(const TestQuery& q, const GroundTruth& d,
                                          std::uint64_t cap) {
  if (q.arity < 1) return absl::InvalidArgumentError("arity < 1");
  const std::uint64_t work = SaturatingPower(d.size(), q.arity);
  if (work > cap) return CapExceeded(work, cap);
  absl::StatusOr<double> mean = AverageOverPopulation(
      d, q.arity, [&q](TupleView t) { return CheckedTestValue(q, t); });
  if (!mean.ok()) return mean.status();
  const double mu = *mean;
  // Centered second pass keeps the variance free of cancellation.
  absl::StatusOr<double> variance =
      AverageOverPopulation(d, q.arity, [&q, mu](TupleView t) -> absl::StatusOr<double> {
        const double v = q(t) - mu;
        return v * v;
      });
  if (!variance.ok()) return variance.status();
  return Moments{mu, *variance};
}

double ErrorFromGap(double gap, double variance, int arity) {
  gap = std::abs(gap);
  double best = gap;
  if (variance > 0.0) best = std::min(best, gap * gap / variance);
  return best / static_cast<double>(arity);
}

absl::StatusOr<ErrorBreakdown> ErrorMetric(const TestQuery& psi,
                                           const SampleView& sample,
                                           const GroundTruth& d,
                                           const EnumerationOptions& options) {
  absl::StatusOr<Estimate> on_sample = ExpectationOnSample(psi, sample, options);
  if (!on_sample.ok()) return on_sample.status();
  absl::StatusOr<Moments> moments = PopulationMoments(psi, d, options.cap);
  if (!moments.ok()) return moments.status();
  ErrorBreakdown out;
  out.sample_value = on_sample->value;
  out.population_value = moments->mean;
  out.gap = std::abs(out.sample_value - out.population_value);
  out.variance = moments->variance;
  out.error = ErrorFromGap(out.gap, out.variance, psi.arity);
  return out;
}

}  // namespace adasub
