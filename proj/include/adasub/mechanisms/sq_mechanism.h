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

#ifndef ADASUB_MECHANISMS_SQ_MECHANISM_H_
#define ADASUB_MECHANISMS_SQ_MECHANISM_H_

#include <cstdint>
#include <functional>
#include <optional>

#include "absl/status/statusor.h"
#include "adasub/core/dataset.h"
#include "adasub/core/query.h"
#include "adasub/core/random.h"
#include "adasub/core/transcript.h"
#include "adasub/engine/subsample.h"
#include "adasub/mechanisms/ledger.h"

namespace adasub {

// Constants inside the asymptotic parameter schedule. The accuracy proof is
// loose by large factors; these defaults are the ones the desk-scale
// experiments are run with.
struct SqConstants {
  double c_epsilon = 1.0;
  double c_k = 8.0;
};

struct SqParams {
  double epsilon = 0.0;
  std::int64_t k = 0;
  // sqrt(T log(T/delta) log(1/delta)) / tau^2, leading constant 1.
  double advisory_n = 0.0;
};

// epsilon = min(c_epsilon log(2/delta) / n, 0.49),
// k = ceil(c_k log(4T/delta) / tau^2).
// Requires n >= 1, T >= 1, 0 < tau < 1, 0 < delta < 1.
absl::StatusOr<SqParams> ComputeSqParams(std::int64_t n, std::int64_t T, double tau,
                                         double delta, const SqConstants& c = {});

// Clamps phi into [epsilon, 1 - epsilon]. Requires 0 <= epsilon < 1/2.
absl::StatusOr<TestQuery> Squash(const TestQuery& phi, double epsilon);

// std(phi) = sqrt(mu (1 - mu)) for mu = phi(D).
double SqStd(double population_mean);
// max(tau std(phi), tau^2): the accuracy each answer is held to.
double SqAccuracyThreshold(double population_mean, double tau);

struct SqOptions {
  double epsilon = 0.0;
  std::int64_t k = 1;
  // Enters the per-vote charge.
  double delta = 0.1;
};

// Answers statistical queries by k votes. Vote i of query t draws one
// element uniformly from S (independently across votes) and flips a coin
// with bias squash(phi)(x); the answer is the fraction of heads. Each vote
// is a w=1, |Y|=2 subsampling query whose outputs keep mass >= epsilon, and
// is charged CostHighProbability(n, 2, epsilon, delta).
//
// Randomness for vote i of query t comes from rng.Split(t).Split(i).
class SqSession {
 public:
  static absl::StatusOr<SqSession> Create(Dataset sample, const SqOptions& options,
                                          RandomSource rng, BudgetLedger ledger = {});

  // Fails for arity != 1, and with ResourceExhausted (no votes drawn, no
  // state change) when the ledger refuses the k-vote charge.
  absl::StatusOr<double> Answer(const TestQuery& phi);

  // Draws votes one at a time until stop(votes, ones) returns true or
  // max_votes is reached, charging each vote as it is drawn. No accuracy
  // claim attaches to this mode. A refusal before the first vote is an
  // error; a later refusal ends the query early.
  absl::StatusOr<double> AnswerSequential(
      const TestQuery& phi,
      const std::function<bool(std::int64_t votes, std::int64_t ones)>& stop,
      std::int64_t max_votes);

  double vote_cost() const { return vote_cost_; }
  double query_cost() const { return vote_cost_ * static_cast<double>(options_.k); }
  const SqOptions& options() const { return options_; }
  const Dataset& sample() const { return sample_; }
  const Transcript& transcript() const { return transcript_; }
  const BudgetLedger& ledger() const { return ledger_; }

 private:
  SqSession(Dataset sample, const SqOptions& options, RandomSource rng,
            BudgetLedger ledger, double vote_cost);

  absl::StatusOr<Query> VoteQuery(const TestQuery& phi) const;

  Dataset sample_;
  SqOptions options_;
  RandomSource rng_;
  BudgetLedger ledger_;
  double vote_cost_;
  Subsampler subsampler_;
  Transcript transcript_;
};

}  // namespace adasub

#endif  // ADASUB_MECHANISMS_SQ_MECHANISM_H_
