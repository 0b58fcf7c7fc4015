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

#include "adasub/harness/analyst.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "adasub/core/query_library.h"

namespace adasub {
namespace {

class FixedAnalyst : public SqAnalyst {
 public:
  explicit FixedAnalyst(std::vector<TestQuery> queries) : queries_(std::move(queries)) {}

  std::int64_t rounds() const override {
    return static_cast<std::int64_t>(queries_.size());
  }
  TestQuery NextQuery(std::int64_t t, std::span<const double>, RandomSource&) override {
    return queries_[static_cast<std::size_t>(t - 1)];
  }
  std::vector<TestQuery> Tests(std::span<const double>, RandomSource&) override {
    return queries_;
  }

 private:
  std::vector<TestQuery> queries_;
};

class RandomCorrelationAnalyst : public SqAnalyst {
 public:
  explicit RandomCorrelationAnalyst(const RandomCorrelationOptions& options)
      : options_(options) {}

  std::int64_t rounds() const override { return options_.rounds; }

  TestQuery NextQuery(std::int64_t t, std::span<const double> responses,
                      RandomSource&) override {
    bool positive = true;
    if (options_.adaptive_queries && !responses.empty()) {
      positive = responses.back() >= options_.center;
    }
    asked_positive_.push_back(positive);
    return CoordinateTestQuery(static_cast<std::size_t>(t - 1), positive);
  }

  std::vector<TestQuery> Tests(std::span<const double> responses,
                               RandomSource&) override {
    std::vector<int> signs(responses.size());
    for (std::size_t t = 0; t < responses.size(); ++t) {
      const int leaning = responses[t] >= options_.center ? 1 : -1;
      signs[t] = asked_positive_[t] ? leaning : -leaning;
    }
    return {SignedSumTestQuery(std::move(signs))};
  }

 private:
  RandomCorrelationOptions options_;
  std::vector<bool> asked_positive_;
};

class MedianDriftAnalyst : public MedianAnalyst {
 public:
  explicit MedianDriftAnalyst(const MedianDriftOptions& options) : options_(options) {
    grid_.resize(options_.grid_points);
    const double step =
        (options_.grid_hi - options_.grid_lo) / static_cast<double>(options_.grid_points - 1);
    for (int i = 0; i < options_.grid_points; ++i) {
      grid_[i] = options_.grid_lo + step * i;
    }
  }

  std::int64_t rounds() const override { return options_.rounds; }

  Query NextQuery(std::int64_t t, std::span<const double> responses,
                  RandomSource&) override {
    const int w = Arity(t);
    double shift = 0.0;
    double sign = 1.0;
    if (!responses.empty()) {
      const double last = responses.back();
      shift = std::clamp(-0.5 * last, -1.0, 1.0) + (t % 3 == 0 ? 0.25 : -0.25);
      sign = last >= 0.0 ? -1.0 : 1.0;
    }
    Query q;
    q.id = absl::StrCat("drift:w", w, ":s", sign > 0 ? "+" : "-", ":a", shift);
    q.arity = w;
    q.range = grid_;
    q.order_invariant = true;
    q.evaluator = DeterministicEvaluator([grid = grid_, sign, shift](TupleView x) {
      double total = 0.0;
      for (std::size_t j = 0; j < x.size(); ++j) total += x.real(j);
      return SnapToGrid(grid, sign * total / static_cast<double>(x.size()) + shift);
    });
    return q;
  }

  std::vector<TestQuery> Tests(std::span<const double>, RandomSource&) override {
    return {};
  }

  std::vector<int> PlannedArities() const override {
    std::vector<int> out;
    for (std::int64_t t = 1; t <= options_.rounds; ++t) out.push_back(Arity(t));
    return out;
  }
  std::vector<std::int64_t> PlannedRangeSizes() const override {
    return std::vector<std::int64_t>(static_cast<std::size_t>(options_.rounds),
                                     options_.grid_points);
  }

 private:
  int Arity(std::int64_t t) const {
    return 1 + static_cast<int>((t - 1) % options_.max_arity);
  }

  MedianDriftOptions options_;
  std::vector<double> grid_;
};

}  // namespace

std::unique_ptr<SqAnalyst> MakeFixedAnalyst(std::vector<TestQuery> queries) {
  return std::make_unique<FixedAnalyst>(std::move(queries));
}

std::unique_ptr<SqAnalyst> MakeRandomCorrelationAnalyst(
    const RandomCorrelationOptions& options) {
  return std::make_unique<RandomCorrelationAnalyst>(options);
}

std::unique_ptr<MedianAnalyst> MakeMedianDriftAnalyst(const MedianDriftOptions& options) {
  return std::make_unique<MedianDriftAnalyst>(options);
}

std::size_t SnapToGrid(const std::vector<double>& grid, double x) {
  auto it = std::lower_bound(grid.begin(), grid.end(), x);
  if (it == grid.begin()) return 0;
  if (it == grid.end()) return grid.size() - 1;
  const std::size_t hi = static_cast<std::size_t>(it - grid.begin());
  return (x - grid[hi - 1] <= grid[hi] - x) ? hi - 1 : hi;
}

absl::StatusOr<TestQuery> ParseTestQuery(std::string_view descriptor) {
  const std::string text(descriptor);
  if (text == "identity") return IdentityTestQuery();
  const std::size_t colon = text.find(':');
  if (colon == std::string::npos) {
    return absl::InvalidArgumentError(absl::StrCat("unknown query '", text, "'"));
  }
  const std::string kind = text.substr(0, colon);
  const std::string arg = text.substr(colon + 1);
  if (kind == "constant" || kind == "threshold") {
    double v = 0.0;
    if (!absl::SimpleAtod(arg, &v)) {
      return absl::InvalidArgumentError(absl::StrCat("bad number in '", text, "'"));
    }
    if (kind == "threshold") return ThresholdTestQuery(v);
    if (!(v >= 0.0 && v <= 1.0)) {
      return absl::InvalidArgumentError(absl::StrCat("constant ", v, " outside [0, 1]"));
    }
    return ConstantTestQuery(v);
  }
  if (kind == "coord" || kind == "coord-") {
    std::uint64_t c = 0;
    if (!absl::SimpleAtoi(arg, &c)) {
      return absl::InvalidArgumentError(absl::StrCat("bad coordinate in '", text, "'"));
    }
    return CoordinateTestQuery(static_cast<std::size_t>(c), kind == "coord");
  }
  return absl::InvalidArgumentError(absl::StrCat("unknown query '", text, "'"));
}

}  // namespace adasub
