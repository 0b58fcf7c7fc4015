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

#ifndef ADASUB_CORE_ELEMENT_H_
#define ADASUB_CORE_ELEMENT_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace adasub {

// Fixed-length vector of +1/-1 coordinates, packed one bit per coordinate
// (set bit = +1).
class SignVector {
 public:
  SignVector() = default;
  // All coordinates start at -1.
  explicit SignVector(std::size_t dim);

  std::size_t dim() const { return dim_; }
  bool is_positive(std::size_t i) const {
    return (words_[i >> 6] >> (i & 63)) & 1u;
  }
  int sign(std::size_t i) const { return is_positive(i) ? 1 : -1; }
  void set_positive(std::size_t i, bool positive);

  std::span<const std::uint64_t> words() const { return words_; }
  std::span<std::uint64_t> mutable_words() { return words_; }

  friend bool operator==(const SignVector&, const SignVector&) = default;

  template <typename H>
  friend H AbslHashValue(H h, const SignVector& v) {
    return H::combine(std::move(h), v.dim_, v.words_);
  }

 private:
  std::size_t dim_ = 0;
  std::vector<std::uint64_t> words_;
};

// Integer-coded categorical symbol.
using Symbol = std::int64_t;

// One element of the data domain X.
using Element = std::variant<Symbol, double, SignVector>;

// Numeric value of a Symbol or real element. Sign vectors have no scalar
// value; asking for one is a programming error (asserts).
double AsReal(const Element& e);

// Hash functor for Element keys in hash containers.
struct ElementHash {
  std::size_t operator()(const Element& e) const;
};

std::string ElementToString(const Element& e);

std::vector<Element> SymbolElements(std::span<const Symbol> symbols);
std::vector<Element> RealElements(std::span<const double> values);

}  // namespace adasub

#endif  // ADASUB_CORE_ELEMENT_H_
