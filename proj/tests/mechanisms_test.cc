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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <vector>

#include "adasub/core/expectation.h"
#include "adasub/core/query_library.h"
#include "adasub/mechanisms/cost.h"
#include "adasub/mechanisms/ledger.h"
#include "adasub/mechanisms/median_mechanism.h"
#include "adasub/mechanisms/sq_mechanism.h"
#include "gtest/gtest.h"

namespace adasub {
namespace {

Dataset Reals(std::vector<double> v) { return Dataset::Of(RealElements(v)); }

std::vector<double> OneToTen() {
  std::vector<double> r(10);
  std::iota(r.begin(), r.end(), 1.0);
  return r;
}

TEST(CostTest, Basic) {
  EXPECT_NEAR(*CostBasic(100, 1, 2), 2 * std::log(100.0) / 99, 1e-15);
  EXPECT_NEAR(*CostBasic(100, 1, 2), 0.0930337, 1e-7);
  EXPECT_NEAR(*CostBasic(4, 2, 2), 2.77259, 1e-5);
  EXPECT_NEAR(*CostBasic(50, 3, 8), 2 * *CostBasic(50, 3, 4), 1e-15);
  EXPECT_FALSE(CostBasic(4, 4, 2).ok());
}

TEST(CostTest, Uniform) {
  EXPECT_NEAR(*CostUniform(100, 1, 2, 0.0), *CostBasic(100, 1, 2), 1e-15);
  EXPECT_NEAR(*CostUniform(100, 1, 2, 0.1), 0.022128, 1e-6);
  EXPECT_NEAR(*CostUniform(1000000, 1, 2, 0.5), 2.0 / 999999, 1e-11);
  RandomSource rng(1);
  for (int i = 0; i < 200; ++i) {
    const int n = 2 + static_cast<int>(rng.UniformInt(1000));
    const int w = 1 + static_cast<int>(rng.UniformInt(n - 1));
    const int y = 2 + static_cast<int>(rng.UniformInt(5));
    EXPECT_LE(*CostUniform(n, w, y, rng.Uniform() / y), *CostBasic(n, w, y) * (1 + 1e-15));
  }
}

TEST(CostTest, HighProbability) {
  EXPECT_NEAR(*CostHighProbability(100, 2, 0.1, 0.1), 0.024145, 1e-6);
  EXPECT_NEAR(*CostHighProbability(100, 2, 0.1, 1 - 1e-12), 0.02, 1e-9);
  EXPECT_NEAR(*CostHighProbability(100, 2, 0.0, 0.1), 0.02 * std::log(100.0), 1e-15);
  EXPECT_FALSE(CostHighProbability(100, 2, 0.1, 1.0).ok());
}

TEST(LedgerTest, AlmostSureRefusalLeavesStateUnchanged) {
  BudgetLedger ledger(BudgetMode::kAlmostSure, 1.0);
  ASSERT_TRUE(ledger.Charge(0.6).ok());
  EXPECT_TRUE(absl::IsResourceExhausted(ledger.Charge(0.5)));
  EXPECT_EQ(ledger.total(), 0.6);
  EXPECT_EQ(ledger.charges().size(), 1u);
  ASSERT_TRUE(ledger.Charge(0.4).ok());
  EXPECT_LE(ledger.total(), ledger.limit());
  EXPECT_FALSE(ledger.Charge(-1).ok());
}

TEST(LedgerTest, ExpectationModeNeverRefuses) {
  BudgetLedger ledger(BudgetMode::kExpectation, 1.0);
  for (int i = 0; i < 5; ++i) ASSERT_TRUE(ledger.Charge(0.5).ok());
  EXPECT_EQ(ledger.total(), 2.5);
}

TEST(LedgerTest, MutualInformationBound) {
  BudgetLedger empty;
  EXPECT_EQ(MutualInformationUpperBound(empty, 100), 0.0);
  BudgetLedger one;
  ASSERT_TRUE(one.Charge(0.0221).ok());
  EXPECT_NEAR(MutualInformationUpperBound(one, 100), 2.21, 1e-12);
  BudgetLedger many;
  for (int i = 0; i < 7; ++i) ASSERT_TRUE(many.Charge(0.125).ok());
  EXPECT_NEAR(MutualInformationUpperBound(many, 40), 40 * 7 * 0.125, 1e-12);
}

TEST(SqParamsTest, Schedule) {
  absl::StatusOr<SqParams> p = ComputeSqParams(15000, 1000, 0.1, 0.1);
  ASSERT_TRUE(p.ok());
  EXPECT_NEAR(p->epsilon, std::log(20.0) / 15000, 1e-15);
  // ceil(8 ln(40000) / 0.01) = ceil(8477.27...).
  EXPECT_EQ(p->k, static_cast<std::int64_t>(std::ceil(8 * std::log(40000.0) / 0.01)));
  EXPECT_EQ(p->k, 8478);
  EXPECT_NEAR(p->advisory_n,
              std::sqrt(1000 * std::log(10000.0) * std::log(10.0)) / 0.01, 1e-9);

  absl::StatusOr<SqParams> edge = ComputeSqParams(50, 1, 0.999, 0.999);
  ASSERT_TRUE(edge.ok());
  EXPECT_EQ(edge->k, 12);
  EXPECT_GT(edge->epsilon, 0.0);
  EXPECT_FALSE(ComputeSqParams(100, 10, 1.0, 0.1).ok());
  EXPECT_FALSE(ComputeSqParams(100, 10, 0.1, 0.0).ok());
  EXPECT_FALSE(ComputeSqParams(100, 0, 0.1, 0.1).ok());
}

TEST(SquashTest, ClampsAndIsIdempotent) {
  const Dataset s = Reals({0.0, 0.5, 1.0, 0.95});
  absl::StatusOr<TestQuery> q = Squash(IdentityTestQuery(), 0.1);
  ASSERT_TRUE(q.ok());
  absl::StatusOr<TestQuery> qq = Squash(*q, 0.1);
  ASSERT_TRUE(qq.ok());
  const std::vector<double> expected = {0.1, 0.5, 0.9, 0.9};
  for (std::size_t i = 0; i < s.size(); ++i) {
    const std::size_t pos[1] = {i};
    const TupleView t(s.elements(), pos);
    EXPECT_DOUBLE_EQ((*q)(t), expected[i]);
    EXPECT_DOUBLE_EQ((*qq)(t), expected[i]);
  }
  EXPECT_FALSE(Squash(IdentityTestQuery(), 0.5).ok());
}

TEST(SqSessionTest, ConstantZeroWithoutSquash) {
  absl::StatusOr<SqSession> s = SqSession::Create(Reals({0.2, 0.9}), {0.0, 50, 0.1}, RandomSource(1));
  ASSERT_TRUE(s.ok());
  for (int i = 0; i < 20; ++i) EXPECT_EQ(*s->Answer(ConstantTestQuery(0.0)), 0.0);
}

TEST(SqSessionTest, ConcentratesWithManyVotes) {
  absl::StatusOr<SqSession> half =
      SqSession::Create(Reals({0.0, 1.0}), {0.0, 1000000, 0.1}, RandomSource(2));
  ASSERT_TRUE(half.ok());
  EXPECT_NEAR(*half->Answer(ConstantTestQuery(0.5)), 0.5, 0.002);
  absl::StatusOr<SqSession> floor =
      SqSession::Create(Reals({0.0, 1.0}), {0.1, 1000000, 0.1}, RandomSource(3));
  ASSERT_TRUE(floor.ok());
  EXPECT_NEAR(*floor->Answer(ConstantTestQuery(0.0)), 0.1, 4 * std::sqrt(0.09 / 1e6));
}

TEST(SqSessionTest, UnbiasedAndOnTheVoteGrid) {
  const Dataset sample = Reals({0.0, 0.02, 0.3, 0.7, 1.0});
  const double eps = 0.05;
  // squash(phi)(S) = mean of (0.05, 0.05, 0.3, 0.7, 0.95).
  const double target = (0.05 + 0.05 + 0.3 + 0.7 + 0.95) / 5;
  const std::int64_t k = 10;
  absl::StatusOr<SqSession> s = SqSession::Create(sample, {eps, k, 0.1}, RandomSource(4));
  ASSERT_TRUE(s.ok());
  const int reps = 10000;
  double total = 0.0;
  for (int i = 0; i < reps; ++i) {
    const double y = *s->Answer(IdentityTestQuery());
    const double votes = y * k;
    ASSERT_NEAR(votes, std::round(votes), 1e-9);
    total += y;
  }
  const double sd = std::sqrt(target * (1 - target) / (k * reps));
  EXPECT_NEAR(total / reps, target, 4 * sd);
}

TEST(SqSessionTest, ChargesKVotesAndRefusesWithoutDraws) {
  const std::int64_t n = 100, k = 7;
  const double eps = 0.1, delta = 0.1;
  const double per_query = k * *CostHighProbability(n, 2, eps, delta);
  std::vector<double> v(n, 0.5);
  absl::StatusOr<SqSession> s = SqSession::Create(
      Reals(v), {eps, k, delta}, RandomSource(5),
      BudgetLedger(BudgetMode::kAlmostSure, 2.5 * per_query));
  ASSERT_TRUE(s.ok());
  EXPECT_NEAR(s->query_cost(), per_query, 1e-15);
  ASSERT_TRUE(s->Answer(IdentityTestQuery()).ok());
  ASSERT_TRUE(s->Answer(IdentityTestQuery()).ok());
  EXPECT_TRUE(absl::IsResourceExhausted(s->Answer(IdentityTestQuery()).status()));
  EXPECT_EQ(s->transcript().size(), 2u);
  EXPECT_NEAR(s->ledger().total(), 2 * per_query, 1e-12);
  EXPECT_NEAR(s->transcript().total_cost(), s->ledger().total(), 1e-12);
}

TEST(SqSessionTest, SameSeedSameAnswers) {
  auto run = [](std::uint64_t seed) {
    absl::StatusOr<SqSession> s =
        SqSession::Create(Reals({0.1, 0.4, 0.8}), {0.01, 25, 0.1}, RandomSource(seed));
    std::vector<double> out;
    for (int i = 0; i < 10; ++i) out.push_back(*s->Answer(IdentityTestQuery()));
    return out;
  };
  EXPECT_EQ(run(6), run(6));
  EXPECT_NE(run(6), run(7));
}

TEST(SqSessionTest, SequentialStopsWhenAsked) {
  absl::StatusOr<SqSession> s =
      SqSession::Create(Reals({1.0, 1.0}), {0.0, 1, 0.1}, RandomSource(8));
  ASSERT_TRUE(s.ok());
  absl::StatusOr<double> y = s->AnswerSequential(
      IdentityTestQuery(), [](std::int64_t votes, std::int64_t) { return votes >= 5; }, 100);
  ASSERT_TRUE(y.ok());
  EXPECT_EQ(*y, 1.0);
  EXPECT_NEAR(s->ledger().total(), 5 * s->vote_cost(), 1e-15);
}

TEST(ApproximateMedianTest, Examples) {
  EXPECT_TRUE(IsApproximateMedian(ResponsePmf::PointMass({5}, 0), 5));
  ResponsePmf uniform{OneToTen(), std::vector<double>(10, 0.1)};
  EXPECT_TRUE(IsApproximateMedian(uniform, 5));
  EXPECT_TRUE(IsApproximateMedian(uniform, 6));
  EXPECT_FALSE(IsApproximateMedian(uniform, 1));
  EXPECT_FALSE(IsApproximateMedian(uniform, 8));
}

TEST(MedianParamsTest, Schedule) {
  const std::vector<int> w1(1, 1);
  const std::vector<std::int64_t> r2(1, 2);
  EXPECT_EQ(ComputeMedianParams(100, 1, w1, r2, 0.5)->k, 12);
  const std::vector<int> w100(100, 1);
  const std::vector<std::int64_t> r1024(100, 1024);
  EXPECT_EQ(ComputeMedianParams(1000, 100, w100, r1024, 0.05)->k, 85);
  const std::vector<std::int64_t> r1(1, 1);
  EXPECT_EQ(ComputeMedianParams(100, 1, w1, r1, 0.999)->k, 2);
  EXPECT_FALSE(ComputeMedianParams(100, 1, w1, r2, 1.0).ok());
  EXPECT_EQ(CeilLog2(1), 0);
  EXPECT_EQ(CeilLog2(64), 6);
  EXPECT_EQ(CeilLog2(65), 7);
}

TEST(MedianSessionTest, GroupsPartitionTheSample) {
  std::vector<double> v(103);
  std::iota(v.begin(), v.end(), 0.0);
  absl::StatusOr<MedianSession> s = MedianSession::Create(Reals(v), {10, true}, RandomSource(1));
  ASSERT_TRUE(s.ok());
  ASSERT_EQ(s->groups().size(), 10u);
  std::set<double> seen;
  for (const SampleView& g : s->groups()) {
    EXPECT_TRUE(g.size() == 10 || g.size() == 11);
    for (std::size_t i = 0; i < g.size(); ++i) seen.insert(AsReal(g[i]));
  }
  EXPECT_EQ(seen.size(), 103u);
}

TEST(MedianSessionTest, SingleValueRangeNeedsNoRounds) {
  absl::StatusOr<MedianSession> s =
      MedianSession::Create(Reals(std::vector<double>(20, 0.0)), {4, true}, RandomSource(2));
  ASSERT_TRUE(s.ok());
  EXPECT_EQ(*s->Answer(ConstantQuery({3.5}, 0)), 3.5);
  EXPECT_EQ(s->ledger().total(), 0.0);
}

TEST(MedianSessionTest, ConstantWithoutNoiseIsExact) {
  for (std::size_t c = 0; c < 10; ++c) {
    absl::StatusOr<MedianSession> s =
        MedianSession::Create(Reals(std::vector<double>(30, 0.0)), {3, false}, RandomSource(c));
    ASSERT_TRUE(s.ok());
    EXPECT_EQ(*s->Answer(ConstantQuery(OneToTen(), c)), static_cast<double>(c + 1));
  }
}

TEST(MedianSessionTest, ConstantWithNoiseIsRecoveredWithHighProbability) {
  // k = 12 groups of 20 with w = 1: flip probability 0.05, and a wrong round
  // needs 6 of 12 flips, probability below 1e-4.
  int hits = 0;
  const int reps = 200;
  for (int i = 0; i < reps; ++i) {
    absl::StatusOr<MedianSession> s = MedianSession::Create(
        Reals(std::vector<double>(240, 0.0)), {12, true}, RandomSource(100 + i));
    ASSERT_TRUE(s.ok());
    hits += *s->Answer(ConstantQuery(OneToTen(), 6)) == 7.0;
  }
  EXPECT_GE(hits, 198);
}

TEST(MedianSessionTest, ChargesAndRejects) {
  std::vector<double> v(40, 0.0);
  absl::StatusOr<MedianSession> s = MedianSession::Create(Reals(v), {4, true}, RandomSource(3));
  ASSERT_TRUE(s.ok());
  // Four groups of 10; |R| = 10 takes 4 rounds, each charging four votes at
  // p = w / 10.
  const double expected = 4 * 4 * *CostUniform(10, 1, 2, 0.1);
  EXPECT_NEAR(*s->QueryCost(1, 10), expected, 1e-12);
  ASSERT_TRUE(s->Answer(ConstantQuery(OneToTen(), 2)).ok());
  EXPECT_NEAR(s->ledger().total(), expected, 1e-12);
  EXPECT_FALSE(s->Answer(ConstantQuery(OneToTen(), 2, 10)).ok());
  Query unsorted = ConstantQuery({3, 1, 2}, 0);
  EXPECT_FALSE(s->Answer(unsorted).ok());
}

TEST(MedianSessionTest, RefusesBeforeAnyRound) {
  std::vector<double> v(40, 0.0);
  absl::StatusOr<MedianSession> s = MedianSession::Create(
      Reals(v), {4, true}, RandomSource(4), BudgetLedger(BudgetMode::kAlmostSure, 0.01));
  ASSERT_TRUE(s.ok());
  EXPECT_TRUE(absl::IsResourceExhausted(s->Answer(ConstantQuery(OneToTen(), 2)).status()));
  EXPECT_EQ(s->transcript().size(), 0u);
  EXPECT_EQ(s->ledger().total(), 0.0);
}

}  // namespace
}  // namespace adasub
