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

#ifndef ADASUB_CORE_DATASET_H_
#define ADASUB_CORE_DATASET_H_

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "adasub/core/element.h"
#include "adasub/core/random.h"

namespace adasub {

// A w-tuple of elements, given as positions into a backing pool. Queries are
// evaluated on these so that no element is copied per evaluation.
class TupleView {
 public:
  TupleView(std::span<const Element> pool, std::span<const std::size_t> positions)
      : pool_(pool), positions_(positions) {}

  std::size_t size() const { return positions_.size(); }
  const Element& operator[](std::size_t i) const { return pool_[positions_[i]]; }
  double real(std::size_t i) const { return AsReal((*this)[i]); }
  Symbol symbol(std::size_t i) const { return std::get<Symbol>((*this)[i]); }
  const SignVector& signs(std::size_t i) const {
    return std::get<SignVector>((*this)[i]);
  }

 private:
  std::span<const Element> pool_;
  std::span<const std::size_t> positions_;
};

// A multiset of positions into an element pool: the full sample, or the
// sample with one position removed. Positions, not values, are distinct.
class SampleView {
 public:
  SampleView(std::span<const Element> pool, std::vector<std::size_t> positions)
      : pool_(pool), positions_(std::move(positions)) {}

  std::size_t size() const { return positions_.size(); }
  std::span<const Element> pool() const { return pool_; }
  std::span<const std::size_t> positions() const { return positions_; }
  const Element& operator[](std::size_t i) const { return pool_[positions_[i]]; }

 private:
  std::span<const Element> pool_;
  std::vector<std::size_t> positions_;
};

// The sample S in X^n. Immutable; copies share storage.
class Dataset {
 public:
  // Fails on an empty sequence.
  static absl::StatusOr<Dataset> Create(std::vector<Element> elements);
  // As Create, but asserts non-emptiness. For literals in tests and tools.
  static Dataset Of(std::vector<Element> elements);

  std::size_t size() const { return elements_->size(); }
  const Element& operator[](std::size_t i) const { return (*elements_)[i]; }
  std::span<const Element> elements() const { return *elements_; }

  SampleView View() const;
  // S_{-i}: every position except `i`.
  SampleView WithoutIndex(std::size_t i) const;

 private:
  explicit Dataset(std::shared_ptr<const std::vector<Element>> elements)
      : elements_(std::move(elements)) {}

  std::shared_ptr<const std::vector<Element>> elements_;
};

// A finite categorical population D with explicit support.
class GroundTruth {
 public:
  // Masses must be nonnegative and sum to 1 within 1e-12; support entries
  // must be distinct.
  static absl::StatusOr<GroundTruth> Create(std::vector<Element> support,
                                            std::vector<double> masses);

  std::size_t size() const { return support_.size(); }
  std::span<const Element> support() const { return support_; }
  std::span<const double> masses() const { return masses_; }

  // n iid draws.
  Dataset Sample(std::size_t n, RandomSource& rng) const;

 private:
  GroundTruth(std::vector<Element> support, std::vector<double> masses);

  std::vector<Element> support_;
  std::vector<double> masses_;
  std::vector<double> cumulative_;
};

}  // namespace adasub

#endif  // ADASUB_CORE_DATASET_H_
