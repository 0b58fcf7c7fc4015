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

#ifndef ADASUB_MECHANISMS_LEDGER_H_
#define ADASUB_MECHANISMS_LEDGER_H_

#include <cstdint>
#include <limits>
#include <vector>

#include "absl/status/status.h"

namespace adasub {

enum class BudgetMode {
  // Charges are recorded; nothing is refused.
  kExpectation,
  // A charge that would lift the total above the limit is refused.
  kAlmostSure,
};

class BudgetLedger {
 public:
  BudgetLedger() = default;
  BudgetLedger(BudgetMode mode, double limit) : mode_(mode), limit_(limit) {}

  // Records `cost`. Negative costs are InvalidArgument. In almost-sure mode a
  // charge past the limit is ResourceExhausted and leaves the ledger as it
  // was.
  absl::Status Charge(double cost);
  // Whether Charge(cost) would be accepted.
  absl::Status CanCharge(double cost) const;

  BudgetMode mode() const { return mode_; }
  double limit() const { return limit_; }
  double total() const { return total_; }
  double remaining() const { return limit_ - total_; }
  const std::vector<double>& charges() const { return charges_; }

 private:
  BudgetMode mode_ = BudgetMode::kExpectation;
  double limit_ = std::numeric_limits<double>::infinity();
  double total_ = 0.0;
  std::vector<double> charges_;
};

// n times the ledger total: the bound on the mutual information between the
// sample and the responses of one run.
double MutualInformationUpperBound(const BudgetLedger& ledger, std::int64_t n);

}  // namespace adasub

#endif  // ADASUB_MECHANISMS_LEDGER_H_
