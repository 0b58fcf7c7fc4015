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

#include "adasub/core/element.h"

#include <cassert>

#include "absl/hash/hash.h"
#include "absl/strings/str_cat.h"

namespace adasub {

SignVector::SignVector(std::size_t dim) : dim_(dim), words_((dim + 63) / 64) {}

void SignVector::set_positive(std::size_t i, bool positive) {
  const std::uint64_t bit = std::uint64_t{1} << (i & 63);
  if (positive) {
    words_[i >> 6] |= bit;
  } else {
    words_[i >> 6] &= ~bit;
  }
}

std::size_t ElementHash::operator()(const Element& e) const {
  return std::visit(
      [&e](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        return absl::Hash<std::pair<std::size_t, T>>()({e.index(), v});
      },
      e);
}

double AsReal(const Element& e) {
  if (const auto* s = std::get_if<Symbol>(&e)) return static_cast<double>(*s);
  const auto* d = std::get_if<double>(&e);
  assert(d != nullptr && "sign vectors have no scalar value");
  return *d;
}

std::string ElementToString(const Element& e) {
  if (const auto* s = std::get_if<Symbol>(&e)) return absl::StrCat(*s);
  if (const auto* d = std::get_if<double>(&e)) return absl::StrCat(*d);
  const auto& v = std::get<SignVector>(e);
  std::string out;
  out.reserve(v.dim());
  for (std::size_t i = 0; i < v.dim(); ++i) out += v.is_positive(i) ? '+' : '-';
  return out;
}

std::vector<Element> SymbolElements(std::span<const Symbol> symbols) {
  return {symbols.begin(), symbols.end()};
}

std::vector<Element> RealElements(std::span<const double> values) {
  return {values.begin(), values.end()};
}

}  // namespace adasub
