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

#include "adasub/mechanisms/ledger.h"

#include "absl/strings/str_cat.h"

namespace adasub {

absl::Status BudgetLedger::CanCharge(double cost) const {
  if (!(cost >= 0.0)) {
    return absl::InvalidArgumentError(absl::StrCat("negative charge ", cost));
  }
  if (mode_ == BudgetMode::kAlmostSure && total_ + cost > limit_) {
    return absl::ResourceExhaustedError(absl::StrCat(
        "budget exhausted: charge ", cost, " on total ", total_, " exceeds ", limit_));
  }
  return absl::OkStatus();
}

absl::Status BudgetLedger::Charge(double cost) {
  if (absl::Status s = CanCharge(cost); !s.ok()) return s;
  total_ += cost;
  charges_.push_back(cost);
  return absl::OkStatus();
}

double MutualInformationUpperBound(const BudgetLedger& ledger, std::int64_t n) {
  return static_cast<double>(n) * ledger.total();
}

}  // namespace adasub
