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

#include "adasub/core/query_library.h"

#include <numeric>
#include <utility>

#include "absl/strings/str_cat.h"

namespace adasub {

TestQuery ConstantTestQuery(double value, int arity) {
  TestQuery q;
  q.id = absl::StrCat("const:", value);
  q.arity = arity;
  q.evaluate = [value](TupleView) { return value; };
  q.shape = ConstantShape{value};
  q.order_invariant = true;
  return q;
}

TestQuery IdentityTestQuery() {
  TestQuery q;
  q.id = "identity";
  q.evaluate = [](TupleView t) { return t.real(0); };
  q.order_invariant = true;
  return q;
}

TestQuery ThresholdTestQuery(double threshold) {
  TestQuery q;
  q.id = absl::StrCat("ge:", threshold);
  q.evaluate = [threshold](TupleView t) {
    return t.real(0) >= threshold ? 1.0 : 0.0;
  };
  q.order_invariant = true;
  return q;
}

TestQuery EqualityTestQuery() {
  TestQuery q;
  q.id = "eq";
  q.arity = 2;
  q.evaluate = [](TupleView t) { return t[0] == t[1] ? 1.0 : 0.0; };
  q.order_invariant = true;
  return q;
}

TestQuery CoordinateTestQuery(std::size_t coordinate, bool positive) {
  TestQuery q;
  q.id = absl::StrCat("coord:", positive ? "+" : "-", coordinate);
  q.evaluate = [coordinate, positive](TupleView t) {
    return t.signs(0).is_positive(coordinate) == positive ? 1.0 : 0.0;
  };
  q.shape = CoordinateIndicator{coordinate, positive};
  q.order_invariant = true;
  return q;
}

TestQuery SignedSumTestQuery(std::vector<int> signs) {
  TestQuery q;
  q.id = absl::StrCat("signed_sum:", signs.size());
  q.evaluate = [signs](TupleView t) {
    const SignVector& x = t.signs(0);
    long total = 0;
    for (std::size_t i = 0; i < signs.size(); ++i) total += signs[i] * x.sign(i);
    return total > 0 ? 1.0 : 0.0;
  };
  q.shape = SignedSumIndicator{std::move(signs)};
  q.order_invariant = true;
  return q;
}

Query ConstantQuery(std::vector<double> range, std::size_t index, int arity) {
  Query q;
  q.id = absl::StrCat("const_index:", index);
  q.arity = arity;
  q.range = std::move(range);
  q.evaluator = DeterministicEvaluator([index](TupleView) { return index; });
  q.order_invariant = true;
  return q;
}

Query IdentityQuery(std::size_t range_size) {
  Query q;
  q.id = "identity";
  q.range.resize(range_size);
  std::iota(q.range.begin(), q.range.end(), 0.0);
  q.evaluator = DeterministicEvaluator(
      [](TupleView t) { return static_cast<std::size_t>(t.symbol(0)); });
  q.order_invariant = true;
  return q;
}

Query SymbolSumQuery(int arity) {
  Query q;
  q.id = absl::StrCat("sum", arity);
  q.arity = arity;
  q.range.resize(static_cast<std::size_t>(arity) + 1);
  std::iota(q.range.begin(), q.range.end(), 0.0);
  q.evaluator = DeterministicEvaluator([](TupleView t) {
    std::size_t total = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
      total += static_cast<std::size_t>(t.symbol(i));
    }
    return total;
  });
  q.order_invariant = true;
  return q;
}

Query XorQuery() {
  Query q;
  q.id = "xor";
  q.arity = 2;
  q.range = {0.0, 1.0};
  q.evaluator = DeterministicEvaluator([](TupleView t) {
    return static_cast<std::size_t>((t.symbol(0) ^ t.symbol(1)) & 1);
  });
  q.order_invariant = true;
  return q;
}

Query BernoulliQuery(TestQuery phi, double floor) {
  Query q;
  q.id = absl::StrCat("vote:", phi.id);
  q.arity = phi.arity;
  q.range = {0.0, 1.0};
  q.order_invariant = phi.order_invariant;
  q.uniformity_floor = floor;
  q.evaluator = DistributionEvaluator(
      [phi = std::move(phi)](TupleView t, std::span<double> out) {
        const double one = phi(t);
        out[0] = 1.0 - one;
        out[1] = one;
      });
  return q;
}

}  // namespace adasub
