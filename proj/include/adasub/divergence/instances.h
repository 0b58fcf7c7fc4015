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

#ifndef ADASUB_DIVERGENCE_INSTANCES_H_
#define ADASUB_DIVERGENCE_INSTANCES_H_

#include <cstddef>
#include <span>
#include <vector>

#include "adasub/core/dataset.h"
#include "adasub/core/element.h"
#include "adasub/core/query.h"
#include "adasub/core/random.h"

namespace adasub {

// Random instance generators for the property suites. Every draw comes from
// the supplied stream, so (seed, path) pins an instance.

// Dirichlet(1, ..., 1): uniform over the simplex.
std::vector<double> RandomPmf(std::size_t size, RandomSource& rng);
// As RandomPmf, then each outcome is zeroed with probability 1/3 (at least
// one survives) and the rest renormalized.
std::vector<double> RandomSparsePmf(std::size_t size, RandomSource& rng);

// A query on symbols in [0, alphabet) given by a table over alphabet^w.
// Entry (x_1, ..., x_w) lives at index sum_j x_j * alphabet^(j-1).
struct TableQuerySpec {
  int arity = 1;
  int ysize = 2;
  int alphabet = 2;
  // Deterministic: one output index per entry.
  std::vector<std::size_t> outputs;
  // Randomized: ysize masses per entry. Used when nonempty.
  std::vector<double> masses;

  Query ToQuery() const;
};

TableQuerySpec RandomDeterministicTable(int arity, int ysize, int alphabet,
                                        RandomSource& rng);
TableQuerySpec RandomRandomizedTable(int arity, int ysize, int alphabet,
                                     RandomSource& rng);

// n symbols uniform on [0, alphabet).
std::vector<Symbol> RandomSymbols(std::size_t n, int alphabet, RandomSource& rng);

// f over the w-subsets of [n] (lexicographic order), iid uniform on [-1, 1].
std::vector<double> RandomSubsetFunction(int n, int w, RandomSource& rng);
// f(T) = sum over i in T of alpha_i, n = |alpha|.
std::vector<double> LinearSubsetFunction(std::span<const double> alpha, int w);

}  // namespace adasub

#endif  // ADASUB_DIVERGENCE_INSTANCES_H_
