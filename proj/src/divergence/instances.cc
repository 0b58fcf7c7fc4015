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

#include "adasub/divergence/instances.h"

#include <cmath>
#include <string>

#include "absl/strings/str_cat.h"
#include "adasub/core/combinatorics.h"

namespace adasub {
namespace {

std::size_t TableIndex(TupleView t, int alphabet) {
  std::size_t index = 0;
  std::size_t scale = 1;
  for (std::size_t j = 0; j < t.size(); ++j) {
    index += static_cast<std::size_t>(t.symbol(j)) * scale;
    scale *= static_cast<std::size_t>(alphabet);
  }
  return index;
}

std::size_t TableSize(int arity, int alphabet) {
  return static_cast<std::size_t>(SaturatingPower(alphabet, arity));
}

}  // namespace

std::vector<double> RandomPmf(std::size_t size, RandomSource& rng) {
  std::vector<double> pmf(size);
  double total = 0.0;
  for (double& m : pmf) {
    // 1 - U lies in (0, 1], so the log is finite.
    m = -std::log(1.0 - rng.Uniform());
    total += m;
  }
  if (total <= 0.0) {
    pmf.assign(size, 1.0 / static_cast<double>(size));
    return pmf;
  }
  for (double& m : pmf) m /= total;
  return pmf;
}

std::vector<double> RandomSparsePmf(std::size_t size, RandomSource& rng) {
  std::vector<double> pmf = RandomPmf(size, rng);
  const std::size_t keep = rng.UniformInt(size);
  double total = 0.0;
  for (std::size_t y = 0; y < size; ++y) {
    if (y != keep && rng.UniformInt(3) == 0) pmf[y] = 0.0;
    total += pmf[y];
  }
  if (total <= 0.0) {
    pmf.assign(size, 0.0);
    pmf[keep] = 1.0;
    return pmf;
  }
  for (double& m : pmf) m /= total;
  return pmf;
}

Query TableQuerySpec::ToQuery() const {
  Query q;
  q.arity = arity;
  q.range.resize(ysize);
  for (int y = 0; y < ysize; ++y) q.range[y] = y;
  const int a = alphabet;
  if (masses.empty()) {
    q.id = absl::StrCat("table:w", arity, ":y", ysize, ":a", alphabet);
    q.evaluator = DeterministicEvaluator(
        [table = outputs, a](TupleView t) { return table[TableIndex(t, a)]; });
  } else {
    q.id = absl::StrCat("rtable:w", arity, ":y", ysize, ":a", alphabet);
    const std::size_t width = static_cast<std::size_t>(ysize);
    q.evaluator = DistributionEvaluator(
        [table = masses, a, width](TupleView t, std::span<double> out) {
          const std::size_t base = TableIndex(t, a) * width;
          for (std::size_t y = 0; y < width; ++y) out[y] = table[base + y];
        });
  }
  return q;
}

TableQuerySpec RandomDeterministicTable(int arity, int ysize, int alphabet,
                                        RandomSource& rng) {
  TableQuerySpec spec{arity, ysize, alphabet, {}, {}};
  spec.outputs.resize(TableSize(arity, alphabet));
  for (std::size_t& y : spec.outputs) y = rng.UniformInt(ysize);
  return spec;
}

TableQuerySpec RandomRandomizedTable(int arity, int ysize, int alphabet,
                                     RandomSource& rng) {
  TableQuerySpec spec{arity, ysize, alphabet, {}, {}};
  const std::size_t entries = TableSize(arity, alphabet);
  spec.masses.reserve(entries * ysize);
  for (std::size_t e = 0; e < entries; ++e) {
    for (double m : RandomPmf(ysize, rng)) spec.masses.push_back(m);
  }
  return spec;
}

std::vector<Symbol> RandomSymbols(std::size_t n, int alphabet, RandomSource& rng) {
  std::vector<Symbol> out(n);
  for (Symbol& s : out) s = static_cast<Symbol>(rng.UniformInt(alphabet));
  return out;
}

std::vector<double> RandomSubsetFunction(int n, int w, RandomSource& rng) {
  std::vector<double> f(BinomialCoefficient(n, w));
  for (double& v : f) v = 2.0 * rng.Uniform() - 1.0;
  return f;
}

std::vector<double> LinearSubsetFunction(std::span<const double> alpha, int w) {
  std::vector<double> f;
  f.reserve(BinomialCoefficient(alpha.size(), w));
  ForEachSubset(alpha.size(), w, [&](std::span<const std::size_t> subset) {
    double sum = 0.0;
    for (std::size_t i : subset) sum += alpha[i];
    f.push_back(sum);
  });
  return f;
}

}  // namespace adasub
