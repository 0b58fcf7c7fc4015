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

#include "adasub/engine/response_pmf.h"

#include <cmath>
#include <limits>

#include "absl/container/inlined_vector.h"
#include "absl/strings/str_cat.h"
#include "adasub/core/expectation.h"

namespace adasub {
namespace {

std::uint64_t Times(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
    return std::numeric_limits<std::uint64_t>::max();
  }
  return a * b;
}

// A deterministic query contributes one term per tuple; explicit laws
// contribute |Y|.
std::uint64_t TermsPerTuple(const Query& q) {
  return std::holds_alternative<DeterministicEvaluator>(q.evaluator) ? 1 : q.range_size();
}

// Adds weight * law(t) into masses.
absl::Status Accumulate(const Query& q, TupleView t, double weight,
                        std::span<double> buffer, std::vector<double>& masses) {
  if (const auto* det = std::get_if<DeterministicEvaluator>(&q.evaluator)) {
    const std::size_t y = (*det)(t);
    if (y >= masses.size()) {
      return absl::OutOfRangeError(absl::StrCat("query ", q.id, " produced index ", y,
                                                " outside |Y|=", masses.size()));
    }
    masses[y] += weight;
    return absl::OkStatus();
  }
  if (absl::Status s = q.Distribution(t, buffer); !s.ok()) return s;
  for (std::size_t j = 0; j < buffer.size(); ++j) masses[j] += weight * buffer[j];
  return absl::OkStatus();
}

absl::Status CheckEnumerable(const Query& q, std::uint64_t work, std::uint64_t cap) {
  if (q.is_opaque()) {
    return absl::FailedPreconditionError(
        absl::StrCat("query ", q.id, " is opaque; no exact law"));
  }
  if (q.range.empty()) return absl::InvalidArgumentError("empty output range");
  if (work > cap) {
    return absl::ResourceExhaustedError(absl::StrCat(
        "exact law of ", q.id, " needs ", work, " terms, over the cap of ", cap));
  }
  return absl::OkStatus();
}

}  // namespace

absl::Status ResponsePmf::Validate() const {
  if (range.size() != masses.size()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "range has ", range.size(), " values but masses has ", masses.size()));
  }
  double total = 0.0;
  for (double m : masses) {
    if (!(m >= 0.0)) return absl::InvalidArgumentError(absl::StrCat("mass ", m));
    total += m;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    return absl::InvalidArgumentError(absl::StrCat("masses sum to ", total));
  }
  return absl::OkStatus();
}

double ResponsePmf::Mean() const {
  double mean = 0.0;
  for (std::size_t j = 0; j < range.size(); ++j) mean += range[j] * masses[j];
  return mean;
}

ResponsePmf ResponsePmf::PointMass(std::vector<double> range, std::size_t index) {
  ResponsePmf pmf{std::move(range), {}};
  pmf.masses.assign(pmf.range.size(), 0.0);
  pmf.masses[index] = 1.0;
  return pmf;
}

absl::StatusOr<ResponsePmf> ExactResponsePmf(const Query& q, const SampleView& sample,
                                             std::uint64_t cap) {
  if (q.arity < 1 || static_cast<std::size_t>(q.arity) > sample.size()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "arity ", q.arity, " does not fit a sample of size ", sample.size()));
  }
  const std::uint64_t work =
      Times(SampleEnumerationSize(sample.size(), q.arity, q.order_invariant),
            TermsPerTuple(q));
  if (absl::Status s = CheckEnumerable(q, work, cap); !s.ok()) return s;

  ResponsePmf pmf{q.range, std::vector<double>(q.range_size(), 0.0)};
  absl::InlinedVector<double, 8> buffer(q.range_size());
  std::uint64_t count = 0;
  absl::Status status = ForEachSampleTuple(
      sample, q.arity, q.order_invariant, [&](TupleView t) -> absl::Status {
        ++count;
        return Accumulate(q, t, 1.0, std::span<double>(buffer), pmf.masses);
      });
  if (!status.ok()) return status;
  for (double& m : pmf.masses) m /= static_cast<double>(count);
  return pmf;
}

absl::StatusOr<ResponsePmf> ExactResponsePmf(const Query& q, const Dataset& sample,
                                             std::uint64_t cap) {
  return ExactResponsePmf(q, sample.View(), cap);
}

absl::StatusOr<ResponsePmf> PopulationResponsePmf(const Query& q, const GroundTruth& d,
                                                  std::uint64_t cap) {
  if (q.arity < 1) return absl::InvalidArgumentError("arity < 1");
  const std::uint64_t work = Times(SaturatingPower(d.size(), q.arity), TermsPerTuple(q));
  if (absl::Status s = CheckEnumerable(q, work, cap); !s.ok()) return s;

  ResponsePmf pmf{q.range, std::vector<double>(q.range_size(), 0.0)};
  absl::InlinedVector<double, 8> buffer(q.range_size());
  absl::Status status = ForEachPopulationTuple(
      d, q.arity, [&](TupleView t, double weight) -> absl::Status {
        return Accumulate(q, t, weight, std::span<double>(buffer), pmf.masses);
      });
  if (!status.ok()) return status;
  return pmf;
}

}  // namespace adasub
