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

#ifndef ADASUB_CORE_QUERY_LIBRARY_H_
#define ADASUB_CORE_QUERY_LIBRARY_H_

#include <cstddef>
#include <vector>

#include "adasub/core/query.h"

namespace adasub {

// Test queries (outputs in [0, 1]).
TestQuery ConstantTestQuery(double value, int arity = 1);
// x -> AsReal(x); the caller guarantees elements lie in [0, 1].
TestQuery IdentityTestQuery();
// x -> Ind[AsReal(x) >= threshold].
TestQuery ThresholdTestQuery(double threshold);
// (x1, x2) -> Ind[x1 == x2].
TestQuery EqualityTestQuery();
TestQuery CoordinateTestQuery(std::size_t coordinate, bool positive = true);
TestQuery SignedSumTestQuery(std::vector<int> signs);

// Subsampling queries.
//
// Constant output range[index].
Query ConstantQuery(std::vector<double> range, std::size_t index, int arity = 1);
// Symbol x in {0, ..., range_size-1} -> x. Range is {0, ..., range_size-1}.
Query IdentityQuery(std::size_t range_size = 2);
// Sum of `arity` 0/1 symbols; range {0, ..., arity}.
Query SymbolSumQuery(int arity);
// XOR of two 0/1 symbols; range {0, 1}.
Query XorQuery();
// The vote query of a statistical query: outputs 1 with probability
// phi(tuple) and 0 otherwise. Range {0, 1}. The uniformity floor is set to
// `floor` (the caller vouches that phi stays within [floor, 1 - floor]).
Query BernoulliQuery(TestQuery phi, double floor = 0.0);

}  // namespace adasub

#endif  // ADASUB_CORE_QUERY_LIBRARY_H_
