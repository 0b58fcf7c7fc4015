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

#ifndef ADASUB_CORE_TRANSCRIPT_H_
#define ADASUB_CORE_TRANSCRIPT_H_

#include <string>
#include <vector>

#include "absl/status/status.h"

namespace adasub {

struct TranscriptRecord {
  int t = 0;
  std::string query_id;
  double response = 0.0;
  double cost = 0.0;
};

// Ordered record of one analyst session. Timestamps start at 1 and are
// assigned on append.
class Transcript {
 public:
  // Fails on a negative cost.
  absl::Status Append(std::string query_id, double response, double cost);

  const std::vector<TranscriptRecord>& records() const { return records_; }
  std::size_t size() const { return records_.size(); }
  double total_cost() const;

 private:
  std::vector<TranscriptRecord> records_;
};

}  // namespace adasub

#endif  // ADASUB_CORE_TRANSCRIPT_H_
