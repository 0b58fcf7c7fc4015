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

#include "adasub/harness/population.h"

#include <cmath>
#include <functional>
#include <set>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"

namespace adasub {
namespace {

// Fills defaults and rejects unknown keys.
absl::StatusOr<PopulationParams> Resolve(std::string_view name,
                                         const PopulationParams& given,
                                         const PopulationParams& defaults) {
  PopulationParams out = defaults;
  for (const auto& [key, value] : given) {
    if (!defaults.contains(key)) {
      std::vector<std::string> known;
      for (const auto& kv : defaults) known.push_back(kv.first);
      return absl::InvalidArgumentError(
          absl::StrCat("population ", std::string(name), " has no parameter '", key,
                       "' (known: ", absl::StrJoin(known, ", "), ")"));
    }
    out[key] = value;
  }
  return out;
}

absl::StatusOr<std::size_t> Count(const PopulationParams& p, const std::string& key,
                                  std::size_t minimum) {
  const double v = p.at(key);
  if (!(v >= static_cast<double>(minimum)) || v != std::floor(v)) {
    return absl::InvalidArgumentError(
        absl::StrCat("parameter ", key, " must be an integer >= ", minimum, "; got ", v));
  }
  return static_cast<std::size_t>(v);
}

absl::Status Probability(const PopulationParams& p, const std::string& key) {
  const double v = p.at(key);
  if (!(v >= 0.0 && v <= 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("parameter ", key, " must lie in [0, 1]; got ", v));
  }
  return absl::OkStatus();
}

}  // namespace

Dataset ProductCube::Sample(std::size_t n, RandomSource& rng) const {
  std::vector<Element> elements;
  elements.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    SignVector x(dim_);
    if (p_ == 0.5) {
      std::span<std::uint64_t> words = x.mutable_words();
      for (std::uint64_t& word : words) word = rng();
      if (const std::size_t tail = dim_ % 64; tail != 0) {
        words.back() &= (std::uint64_t{1} << tail) - 1;
      }
    } else {
      for (std::size_t c = 0; c < dim_; ++c) x.set_positive(c, rng.Bernoulli(p_));
    }
    elements.emplace_back(std::move(x));
  }
  return Dataset::Of(std::move(elements));
}

double SignedSumProbability(const std::vector<int>& signs, double p) {
  // count[j]: probability that j of the nonzero terms so far are +1.
  std::vector<double> count{1.0};
  for (int s : signs) {
    if (s == 0) continue;
    const double up = s > 0 ? p : 1.0 - p;
    std::vector<double> next(count.size() + 1, 0.0);
    for (std::size_t j = 0; j < count.size(); ++j) {
      next[j] += count[j] * (1.0 - up);
      next[j + 1] += count[j] * up;
    }
    count = std::move(next);
  }
  const std::size_t m = count.size() - 1;
  double total = 0.0;
  // sum > 0 iff 2j - m > 0.
  for (std::size_t j = m / 2 + 1; j <= m; ++j) total += count[j];
  return total;
}

absl::StatusOr<Moments> ProductCube::TestMoments(const TestQuery& q) const {
  if (q.arity != 1) {
    return absl::UnimplementedError("cube populations support arity-1 tests only");
  }
  if (const auto* c = std::get_if<ConstantShape>(&q.shape)) return Moments{c->value, 0.0};
  double mean = 0.0;
  if (const auto* coord = std::get_if<CoordinateIndicator>(&q.shape)) {
    if (coord->coordinate >= dim_) {
      return absl::OutOfRangeError(
          absl::StrCat("coordinate ", coord->coordinate, " outside dimension ", dim_));
    }
    mean = coord->positive ? p_ : 1.0 - p_;
  } else if (const auto* sum = std::get_if<SignedSumIndicator>(&q.shape)) {
    if (sum->signs.size() > dim_) {
      return absl::OutOfRangeError(absl::StrCat(
          sum->signs.size(), " signs for a cube of dimension ", dim_));
    }
    mean = SignedSumProbability(sum->signs, p_);
  } else {
    return absl::UnimplementedError(
        absl::StrCat("query ", q.id, " has no closed-form law on a product cube"));
  }
  return Moments{mean, mean * (1.0 - mean)};
}

Dataset Population::Sample(std::size_t n, RandomSource& rng) const {
  return std::visit([&](const auto& law) { return law.Sample(n, rng); }, law_);
}

absl::StatusOr<Moments> Population::TestMoments(const TestQuery& q) const {
  if (const auto* cube = std::get_if<ProductCube>(&law_)) return cube->TestMoments(q);
  return PopulationMoments(q, std::get<GroundTruth>(law_));
}

absl::StatusOr<ResponsePmf> Population::ResponseLaw(const Query& q,
                                                    std::uint64_t cap) const {
  if (const auto* d = ground_truth()) return PopulationResponsePmf(q, *d, cap);
  return absl::UnimplementedError(
      absl::StrCat("population ", name_, " does not list its support"));
}

const std::vector<std::string>& PopulationNames() {
  static const auto* names = new std::vector<std::string>{
      "bernoulli", "uniform", "uniform_pm1_cube", "bernoulli_cube",
      "discretized_gaussian"};
  return *names;
}

absl::StatusOr<Population> MakePopulation(std::string_view name,
                                          const PopulationParams& params) {
  const std::string label(name);
  if (name == "bernoulli") {
    absl::StatusOr<PopulationParams> p = Resolve(name, params, {{"p", 0.5}});
    if (!p.ok()) return p.status();
    if (absl::Status s = Probability(*p, "p"); !s.ok()) return s;
    const double one = p->at("p");
    absl::StatusOr<GroundTruth> d =
        GroundTruth::Create({Element(Symbol{0}), Element(Symbol{1})}, {1.0 - one, one});
    if (!d.ok()) return d.status();
    return Population(label, *std::move(d));
  }
  if (name == "uniform") {
    absl::StatusOr<PopulationParams> p = Resolve(name, params, {{"m", 2}});
    if (!p.ok()) return p.status();
    absl::StatusOr<std::size_t> m = Count(*p, "m", 1);
    if (!m.ok()) return m.status();
    std::vector<Element> support;
    for (std::size_t i = 0; i < *m; ++i) support.emplace_back(static_cast<Symbol>(i));
    absl::StatusOr<GroundTruth> d = GroundTruth::Create(
        std::move(support), std::vector<double>(*m, 1.0 / static_cast<double>(*m)));
    if (!d.ok()) return d.status();
    return Population(label, *std::move(d));
  }
  if (name == "uniform_pm1_cube" || name == "bernoulli_cube") {
    const bool fair = name == "uniform_pm1_cube";
    absl::StatusOr<PopulationParams> p =
        fair ? Resolve(name, params, {{"d", 1}})
             : Resolve(name, params, {{"d", 1}, {"p", 0.5}});
    if (!p.ok()) return p.status();
    absl::StatusOr<std::size_t> d = Count(*p, "d", 1);
    if (!d.ok()) return d.status();
    double one = 0.5;
    if (!fair) {
      if (absl::Status s = Probability(*p, "p"); !s.ok()) return s;
      one = p->at("p");
    }
    return Population(label, ProductCube(*d, one));
  }
  if (name == "discretized_gaussian") {
    absl::StatusOr<PopulationParams> p = Resolve(
        name, params, {{"points", 101}, {"mu", 0.0}, {"sigma", 1.0}, {"half_width", 3.0}});
    if (!p.ok()) return p.status();
    absl::StatusOr<std::size_t> points = Count(*p, "points", 2);
    if (!points.ok()) return points.status();
    const double mu = p->at("mu");
    const double sigma = p->at("sigma");
    const double half_width = p->at("half_width");
    if (!(sigma > 0.0) || !(half_width > 0.0)) {
      return absl::InvalidArgumentError("sigma and half_width must be positive");
    }
    std::vector<Element> support;
    std::vector<double> masses;
    const double lo = mu - half_width * sigma;
    const double step = 2.0 * half_width * sigma / static_cast<double>(*points - 1);
    double total = 0.0;
    for (std::size_t i = 0; i < *points; ++i) {
      const double x = lo + step * static_cast<double>(i);
      const double z = (x - mu) / sigma;
      support.emplace_back(x);
      masses.push_back(std::exp(-0.5 * z * z));
      total += masses.back();
    }
    for (double& m : masses) m /= total;
    absl::StatusOr<GroundTruth> d = GroundTruth::Create(std::move(support), std::move(masses));
    if (!d.ok()) return d.status();
    return Population(label, *std::move(d));
  }
  return absl::NotFoundError(absl::StrCat(
      "unknown population '", label, "' (known: ", absl::StrJoin(PopulationNames(), ", "),
      ")"));
}

}  // namespace adasub
