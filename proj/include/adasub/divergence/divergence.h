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

#ifndef ADASUB_DIVERGENCE_DIVERGENCE_H_
#define ADASUB_DIVERGENCE_DIVERGENCE_H_

#include <span>
#include <string>

#include "absl/status/statusor.h"
#include "adasub/engine/response_pmf.h"

namespace adasub {

// A nonnegative divergence value or +infinity. Infinity is a state of its
// own, not a float sentinel.
class Divergence {
 public:
  static Divergence Finite(double value) { return Divergence(false, value); }
  static Divergence Infinite() { return Divergence(true, 0.0); }

  bool is_infinite() const { return infinite_; }
  bool is_finite() const { return !infinite_; }
  // Requires is_finite().
  double value() const;
  // value() for finite divergences, `fallback` otherwise.
  double ValueOr(double fallback) const { return infinite_ ? fallback : value_; }
  std::string ToString() const;

  friend bool operator==(const Divergence& a, const Divergence& b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
  }

 private:
  Divergence(bool infinite, double value) : infinite_(infinite), value_(value) {}

  bool infinite_;
  double value_;
};

// KL(D || E) = sum over D(y) > 0 of D(y) log(D(y) / E(y)); infinite iff some
// y has D(y) > 0 = E(y). Fails on a length or range mismatch.
absl::StatusOr<Divergence> KlDivergence(std::span<const double> d,
                                        std::span<const double> e);
absl::StatusOr<Divergence> KlDivergence(const ResponsePmf& d, const ResponsePmf& e);

// Neyman's chi^2(D || E) = sum over y of (D(y) - E(y))^2 / D(y); infinite iff
// supp(E) is not contained in supp(D).
absl::StatusOr<Divergence> ChiSquaredDivergence(std::span<const double> d,
                                                std::span<const double> e);
absl::StatusOr<Divergence> ChiSquaredDivergence(const ResponsePmf& d,
                                                const ResponsePmf& e);

// E_{y ~ D}[(E(y)/D(y) - 1)^2]: the same sum restricted to supp(D), always
// finite. Agrees with ChiSquaredDivergence whenever that is finite.
absl::StatusOr<double> ChiSquaredOnSupport(std::span<const double> d,
                                           std::span<const double> e);

}  // namespace adasub

#endif  // ADASUB_DIVERGENCE_DIVERGENCE_H_
