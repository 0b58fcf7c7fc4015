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

#ifndef ADASUB_HARNESS_POPULATION_H_
#define ADASUB_HARNESS_POPULATION_H_

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "absl/status/statusor.h"
#include "adasub/core/dataset.h"
#include "adasub/core/expectation.h"
#include "adasub/core/query.h"
#include "adasub/core/random.h"
#include "adasub/engine/response_pmf.h"

namespace adasub {

// Product distribution on {-1, +1}^dim with Pr[x_i = +1] = p for every i.
// Its support is too large to list, so only test queries with a closed-form
// law (coordinate indicators, signed-sum indicators, constants) can be
// evaluated against it.
class ProductCube {
 public:
  ProductCube(std::size_t dim, double p) : dim_(dim), p_(p) {}

  std::size_t dim() const { return dim_; }
  double p() const { return p_; }

  Dataset Sample(std::size_t n, RandomSource& rng) const;
  absl::StatusOr<Moments> TestMoments(const TestQuery& q) const;

 private:
  std::size_t dim_;
  double p_;
};

// Pr[sum_t s_t x_t > 0] for independent x_t in {-1, +1} with Pr[x_t = +1] =
// p. Zero signs drop out. Exact, by convolving the count of positive terms.
double SignedSumProbability(const std::vector<int>& signs, double p);

using PopulationLaw = std::variant<GroundTruth, ProductCube>;

class Population {
 public:
  Population(std::string name, PopulationLaw law)
      : name_(std::move(name)), law_(std::move(law)) {}

  const std::string& name() const { return name_; }
  const PopulationLaw& law() const { return law_; }
  // Null for product cubes.
  const GroundTruth* ground_truth() const { return std::get_if<GroundTruth>(&law_); }

  Dataset Sample(std::size_t n, RandomSource& rng) const;
  // Mean and variance of psi over D^w.
  absl::StatusOr<Moments> TestMoments(const TestQuery& q) const;
  // phi^(dist)(D); listed supports only.
  absl::StatusOr<ResponsePmf> ResponseLaw(const Query& q,
                                          std::uint64_t cap = kDefaultEnumerationCap) const;

 private:
  std::string name_;
  PopulationLaw law_;
};

using PopulationParams = std::map<std::string, double>;

// Named generators:
//   bernoulli(p)                          {0, 1} symbols, Pr[1] = p
//   uniform(m)                            symbols 0..m-1, equal mass
//   uniform_pm1_cube(d)                   {-1, +1}^d, coordinates fair
//   bernoulli_cube(d, p)                  {-1, +1}^d, Pr[+1] = p
//   discretized_gaussian(points, mu, sigma, half_width)
//       `points` equally spaced reals on mu +- half_width * sigma, mass
//       proportional to the normal density
// Missing parameters take defaults; unknown ones are errors.
absl::StatusOr<Population> MakePopulation(std::string_view name,
                                          const PopulationParams& params);
const std::vector<std::string>& PopulationNames();

}  // namespace adasub

#endif  // ADASUB_HARNESS_POPULATION_H_
