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

#include "adasub/mechanisms/sq_mechanism.h"

#include <algorithm>
#include <cmath>

#include "absl/strings/str_cat.h"
#include "adasub/core/query_library.h"
#include "adasub/mechanisms/cost.h"

namespace adasub {

absl::StatusOr<SqParams> ComputeSqParams(std::int64_t n, std::int64_t T, double tau,
                                         double delta, const SqConstants& c) {
  if (n < 1 || T < 1) {
    return absl::InvalidArgumentError(absl::StrCat("need n, T >= 1; got n=", n, ", T=", T));
  }
  if (!(tau > 0.0 && tau < 1.0)) {
    return absl::InvalidArgumentError(absl::StrCat("tau ", tau, " outside (0, 1)"));
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    return absl::InvalidArgumentError(absl::StrCat("delta ", delta, " outside (0, 1)"));
  }
  const double td = static_cast<double>(T);
  SqParams params;
  params.epsilon =
      std::min(c.c_epsilon * std::log(2.0 / delta) / static_cast<double>(n), 0.49);
  params.k = static_cast<std::int64_t>(
      std::ceil(c.c_k * std::log(4.0 * td / delta) / (tau * tau)));
  params.k = std::max<std::int64_t>(params.k, 1);
  params.advisory_n =
      std::sqrt(td * std::log(td / delta) * std::log(1.0 / delta)) / (tau * tau);
  return params;
}

absl::StatusOr<TestQuery> Squash(const TestQuery& phi, double epsilon) {
  if (!(epsilon >= 0.0 && epsilon < 0.5)) {
    return absl::InvalidArgumentError(
        absl::StrCat("squash level ", epsilon, " outside [0, 1/2)"));
  }
  if (epsilon == 0.0) return phi;
  TestQuery out;
  out.id = phi.id;
  out.arity = phi.arity;
  out.order_invariant = phi.order_invariant;
  out.evaluate = [base = phi.evaluate, epsilon](TupleView t) {
    return std::clamp(base(t), epsilon, 1.0 - epsilon);
  };
  return out;
}

double SqStd(double population_mean) {
  return std::sqrt(std::max(0.0, population_mean * (1.0 - population_mean)));
}

double SqAccuracyThreshold(double population_mean, double tau) {
  return std::max(tau * SqStd(population_mean), tau * tau);
}

absl::StatusOr<SqSession> SqSession::Create(Dataset sample, const SqOptions& options,
                                            RandomSource rng, BudgetLedger ledger) {
  if (!(options.epsilon >= 0.0 && options.epsilon < 0.5)) {
    return absl::InvalidArgumentError(
        absl::StrCat("epsilon ", options.epsilon, " outside [0, 1/2)"));
  }
  if (options.k < 1) return absl::InvalidArgumentError("k must be positive");
  absl::StatusOr<double> vote_cost = CostHighProbability(
      static_cast<std::int64_t>(sample.size()), 2, options.epsilon, options.delta);
  if (!vote_cost.ok()) return vote_cost.status();
  return SqSession(std::move(sample), options, std::move(rng), std::move(ledger),
                   *vote_cost);
}

SqSession::SqSession(Dataset sample, const SqOptions& options, RandomSource rng,
                     BudgetLedger ledger, double vote_cost)
    : sample_(std::move(sample)),
      options_(options),
      rng_(std::move(rng)),
      ledger_(std::move(ledger)),
      vote_cost_(vote_cost),
      subsampler_(sample_.View()) {}

absl::StatusOr<Query> SqSession::VoteQuery(const TestQuery& phi) const {
  if (phi.arity != 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("statistical query ", phi.id, " has arity ", phi.arity, ", not 1"));
  }
  absl::StatusOr<TestQuery> squashed = Squash(phi, options_.epsilon);
  if (!squashed.ok()) return squashed.status();
  return BernoulliQuery(*std::move(squashed), options_.epsilon);
}

absl::StatusOr<double> SqSession::Answer(const TestQuery& phi) {
  absl::StatusOr<Query> vote = VoteQuery(phi);
  if (!vote.ok()) return vote.status();
  const double cost = query_cost();
  if (absl::Status s = ledger_.CanCharge(cost); !s.ok()) return s;

  const RandomSource query_rng = rng_.Split(transcript_.size() + 1);
  std::int64_t ones = 0;
  for (std::int64_t i = 0; i < options_.k; ++i) {
    RandomSource vote_rng = query_rng.Split(i);
    absl::StatusOr<std::size_t> v = subsampler_.AnswerIndex(*vote, vote_rng);
    if (!v.ok()) return v.status();
    ones += static_cast<std::int64_t>(*v);
  }
  const double answer = static_cast<double>(ones) / static_cast<double>(options_.k);
  if (absl::Status s = ledger_.Charge(cost); !s.ok()) return s;
  if (absl::Status s = transcript_.Append(phi.id, answer, cost); !s.ok()) return s;
  return answer;
}

absl::StatusOr<double> SqSession::AnswerSequential(
    const TestQuery& phi,
    const std::function<bool(std::int64_t votes, std::int64_t ones)>& stop,
    std::int64_t max_votes) {
  absl::StatusOr<Query> vote = VoteQuery(phi);
  if (!vote.ok()) return vote.status();
  if (max_votes < 1) return absl::InvalidArgumentError("max_votes must be positive");
  if (absl::Status s = ledger_.CanCharge(vote_cost_); !s.ok()) return s;

  const RandomSource query_rng = rng_.Split(transcript_.size() + 1);
  std::int64_t votes = 0;
  std::int64_t ones = 0;
  double charged = 0.0;
  while (votes < max_votes && (votes == 0 || !stop(votes, ones))) {
    if (!ledger_.Charge(vote_cost_).ok()) break;
    charged += vote_cost_;
    RandomSource vote_rng = query_rng.Split(votes);
    absl::StatusOr<std::size_t> v = subsampler_.AnswerIndex(*vote, vote_rng);
    if (!v.ok()) return v.status();
    ones += static_cast<std::int64_t>(*v);
    ++votes;
  }
  const double answer = static_cast<double>(ones) / static_cast<double>(votes);
  if (absl::Status s = transcript_.Append(phi.id, answer, charged); !s.ok()) return s;
  return answer;
}

}  // namespace adasub
