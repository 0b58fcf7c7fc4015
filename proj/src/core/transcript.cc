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

#include "adasub/core/transcript.h"

#include "absl/strings/str_cat.h"

namespace adasub {

absl::Status Transcript::Append(std::string query_id, double response,
                                double cost) {
  if (!(cost >= 0.0)) {
    return absl::InvalidArgumentError(absl::StrCat("negative cost ", cost));
  }
  records_.push_back(TranscriptRecord{static_cast<int>(records_.size()) + 1,
                                      std::move(query_id), response, cost});
  return absl::OkStatus();
}

double Transcript::total_cost() const {
  double total = 0.0;
  for (const TranscriptRecord& r : records_) total += r.cost;
  return total;
}

}  // namespace adasub
