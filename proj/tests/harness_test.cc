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
#include <map>
#include <numeric>
#include <sstream>
#include <type_traits>
#include <vector>

#include "adasub/core/query_library.h"
#include "adasub/harness/analyst.h"
#include "adasub/harness/experiment.h"
#include "adasub/harness/population.h"
#include "adasub/harness/report.h"
#include "gtest/gtest.h"

namespace adasub {
namespace {

ExperimentConfig FixedConfig(std::vector<std::string> queries, MechanismKind kind) {
  ExperimentConfig c;
  c.seed = 11;
  c.population = "bernoulli";
  c.population_params = {{"p", 0.3}};
  c.n = 50;
  c.trials = 3;
  c.threads = 1;
  c.mechanism.kind = kind;
  c.mechanism.k = 20;
  c.analyst.name = "fixed";
  c.analyst.rounds = static_cast<std::int64_t>(queries.size());
  c.analyst.queries = std::move(queries);
  return c;
}

TEST(PopulationTest, Bernoulli) {
  absl::StatusOr<Population> p = MakePopulation("bernoulli", {{"p", 0.3}});
  ASSERT_TRUE(p.ok());
  const GroundTruth* d = p->ground_truth();
  ASSERT_NE(d, nullptr);
  ASSERT_EQ(d->size(), 2u);
  EXPECT_EQ(std::get<Symbol>(d->support()[0]), 0);
  EXPECT_NEAR(d->masses()[0], 0.7, 1e-15);
  EXPECT_NEAR(d->masses()[1], 0.3, 1e-15);
}

TEST(PopulationTest, CubeMarginals) {
  absl::StatusOr<Population> p = MakePopulation("uniform_pm1_cube", {{"d", 3}});
  ASSERT_TRUE(p.ok());
  for (std::size_t c = 0; c < 3; ++c) {
    absl::StatusOr<Moments> m = p->TestMoments(CoordinateTestQuery(c));
    ASSERT_TRUE(m.ok());
    EXPECT_DOUBLE_EQ(m->mean, 0.5);
    EXPECT_DOUBLE_EQ(m->variance, 0.25);
  }
  EXPECT_FALSE(p->TestMoments(IdentityTestQuery()).ok());
}

TEST(PopulationTest, CubeSamplesMatchMarginals) {
  absl::StatusOr<Population> p = MakePopulation("bernoulli_cube", {{"d", 130}, {"p", 0.3}});
  ASSERT_TRUE(p.ok());
  RandomSource rng(4);
  const Dataset s = p->Sample(2000, rng);
  for (std::size_t c : {0u, 64u, 129u}) {
    int pos = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      pos += std::get<SignVector>(s[i]).is_positive(c);
    }
    EXPECT_NEAR(pos, 600, 5 * std::sqrt(2000 * 0.21));
  }
}

TEST(PopulationTest, DiscretizedGaussianNormalized) {
  absl::StatusOr<Population> p = MakePopulation("discretized_gaussian", {});
  ASSERT_TRUE(p.ok());
  const GroundTruth* d = p->ground_truth();
  ASSERT_EQ(d->size(), 101u);
  double total = 0.0;
  for (double m : d->masses()) total += m;
  EXPECT_NEAR(total, 1.0, 1e-12);
  EXPECT_NEAR(d->masses()[50], d->masses()[50], 0.0);
  EXPECT_NEAR(d->masses()[10], d->masses()[90], 1e-15);
}

TEST(PopulationTest, Errors) {
  EXPECT_TRUE(absl::IsNotFound(MakePopulation("zipf", {}).status()));
  EXPECT_TRUE(absl::IsInvalidArgument(MakePopulation("bernoulli", {{"q", 1}}).status()));
  EXPECT_FALSE(MakePopulation("bernoulli", {{"p", 1.5}}).ok());
}

TEST(PopulationTest, SignedSumMatchesBruteForce) {
  for (double p : {0.5, 0.3}) {
    for (const std::vector<int>& signs :
         {std::vector<int>{1}, {1, -1, 1}, {-1, -1, 1, 1, 1}, {1, 1, -1, 1}}) {
      const std::size_t d = signs.size();
      double oracle = 0.0;
      for (std::uint32_t bits = 0; bits < (1u << d); ++bits) {
        double mass = 1.0;
        int sum = 0;
        for (std::size_t j = 0; j < d; ++j) {
          const bool plus = (bits >> j) & 1u;
          mass *= plus ? p : 1 - p;
          sum += signs[j] * (plus ? 1 : -1);
        }
        if (sum > 0) oracle += mass;
      }
      EXPECT_NEAR(SignedSumProbability(signs, p), oracle, 1e-14);
    }
  }
}

TEST(AnalystTest, FixedReplays) {
  std::unique_ptr<SqAnalyst> a =
      MakeFixedAnalyst({ConstantTestQuery(0.2), IdentityTestQuery()});
  RandomSource rng(1);
  EXPECT_EQ(a->rounds(), 2);
  std::vector<double> responses;
  EXPECT_EQ(a->NextQuery(1, responses, rng).id, ConstantTestQuery(0.2).id);
  responses.push_back(0.9);
  EXPECT_EQ(a->NextQuery(2, responses, rng).id, IdentityTestQuery().id);
  EXPECT_EQ(a->Tests(responses, rng).size(), 2u);
}

TEST(AnalystTest, RandomCorrelationSingleRound) {
  std::unique_ptr<SqAnalyst> a = MakeRandomCorrelationAnalyst({1, 0.5, false});
  RandomSource rng(2);
  const TestQuery q = a->NextQuery(1, {}, rng);
  EXPECT_EQ(std::get<CoordinateIndicator>(q.shape).coordinate, 0u);
  const std::vector<double> responses = {0.7};
  const std::vector<TestQuery> tests = a->Tests(responses, rng);
  ASSERT_EQ(tests.size(), 1u);
  absl::StatusOr<Population> cube = MakePopulation("uniform_pm1_cube", {{"d", 1}});
  ASSERT_TRUE(cube.ok());
  absl::StatusOr<Moments> m = cube->TestMoments(tests[0]);
  ASSERT_TRUE(m.ok());
  EXPECT_DOUBLE_EQ(m->mean, 0.5);
}

// The analyst sees responses only: NextQuery takes no sample.
static_assert(std::is_same_v<decltype(&SqAnalyst::NextQuery),
                             TestQuery (SqAnalyst::*)(std::int64_t, std::span<const double>,
                                                      RandomSource&)>);

TEST(AnalystTest, MedianDriftPlansItsShape) {
  std::unique_ptr<MedianAnalyst> a = MakeMedianDriftAnalyst({6, 4, 64, -4, 4});
  EXPECT_EQ(a->PlannedArities(), (std::vector<int>{1, 2, 3, 4, 1, 2}));
  for (std::int64_t r : a->PlannedRangeSizes()) EXPECT_EQ(r, 64);
  RandomSource rng(3);
  std::vector<double> responses;
  for (std::int64_t t = 1; t <= 6; ++t) {
    const Query q = a->NextQuery(t, responses, rng);
    EXPECT_EQ(q.arity, a->PlannedArities()[t - 1]);
    EXPECT_EQ(q.range_size(), 64u);
    EXPECT_TRUE(std::is_sorted(q.range.begin(), q.range.end()));
    responses.push_back(0.0);
  }
}

TEST(AnalystTest, ParseTestQuery) {
  EXPECT_TRUE(ParseTestQuery("identity").ok());
  EXPECT_TRUE(ParseTestQuery("constant:0.25").ok());
  EXPECT_TRUE(ParseTestQuery("threshold:0.5").ok());
  EXPECT_TRUE(ParseTestQuery("coord-:3").ok());
  EXPECT_FALSE(ParseTestQuery("constant:2").ok());
  EXPECT_FALSE(ParseTestQuery("median").ok());
}

TEST(ExperimentTest, ConstantQueryHasZeroBias) {
  for (MechanismKind kind : {MechanismKind::kSubsamplingSq, MechanismKind::kNaive}) {
    ExperimentConfig c = FixedConfig({"constant:0"}, kind);
    c.mechanism.epsilon = 0.0;
    c.trials = 1;
    absl::StatusOr<ExperimentReport> r = RunExperiment(c);
    ASSERT_TRUE(r.ok()) << r.status();
    ASSERT_EQ(r->rows.size(), 2u);
    for (const ReportRow& row : r->rows) EXPECT_EQ(row.bias, 0.0);
  }
}

TEST(ExperimentTest, NaiveAnswersTheSampleMean) {
  ExperimentConfig c = FixedConfig({"identity"}, MechanismKind::kNaive);
  absl::StatusOr<ExperimentReport> r = RunExperiment(c);
  ASSERT_TRUE(r.ok());
  for (const ReportRow& row : r->rows) {
    if (!row.is_test) {
      EXPECT_EQ(row.answer, row.sample_value);
    }
    EXPECT_EQ(row.cost, 0.0);
  }
}

TEST(ExperimentTest, RowsSummaryAndLedgerAgree) {
  ExperimentConfig c = FixedConfig({"identity", "threshold:0.5", "constant:0.4"},
                                   MechanismKind::kSubsamplingSq);
  c.trials = 4;
  absl::StatusOr<ExperimentReport> r = RunExperiment(c);
  ASSERT_TRUE(r.ok());
  // trials x T query rows plus the three replayed tests per trial.
  EXPECT_EQ(r->rows.size(), 4u * 6u);
  std::vector<double> costs(4, 0.0);
  for (const ReportRow& row : r->rows) costs[row.trial] += row.cost;
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(costs[i], r->ledger_totals[i], 1e-12);
  const ExperimentSummary again = Summarize(r->rows, c.trials, r->parameters.n, r->refusals);
  EXPECT_EQ(SummaryJson(again), SummaryJson(r->summary));
  EXPECT_NEAR(r->summary.mi_upper_bound,
              r->parameters.n * r->summary.mean_total_cost, 1e-9);
}

TEST(ExperimentTest, ThreadCountDoesNotChangeRows) {
  ExperimentConfig c = FixedConfig({"identity", "threshold:0.5"}, MechanismKind::kSubsamplingSq);
  c.trials = 7;
  absl::StatusOr<ExperimentReport> one = RunExperiment(c);
  c.threads = 3;
  absl::StatusOr<ExperimentReport> three = RunExperiment(c);
  ASSERT_TRUE(one.ok() && three.ok());
  std::ostringstream a, b;
  WriteCsv(one->rows, a);
  WriteCsv(three->rows, b);
  EXPECT_EQ(a.str(), b.str());
}

TEST(ExperimentTest, QueryOrderDoesNotChangeNaiveAnswers) {
  ExperimentConfig c = FixedConfig({"threshold:0.5", "identity", "constant:0.3"},
                                   MechanismKind::kNaive);
  absl::StatusOr<ExperimentReport> a = RunExperiment(c);
  c.analyst.queries = {"constant:0.3", "threshold:0.5", "identity"};
  absl::StatusOr<ExperimentReport> b = RunExperiment(c);
  ASSERT_TRUE(a.ok() && b.ok());
  auto answers = [](const ExperimentReport& r) {
    std::map<std::pair<std::int64_t, std::string>, double> m;
    for (const ReportRow& row : r.rows) {
      if (!row.is_test) m[{row.trial, row.query_id}] = row.answer;
    }
    return m;
  };
  EXPECT_EQ(answers(*a), answers(*b));
}

TEST(ExperimentTest, NonAdaptiveNaiveBiasFollowsSamplingTheory) {
  ExperimentConfig c = FixedConfig({"identity"}, MechanismKind::kNaive);
  c.n = 400;
  c.trials = 300;
  c.threads = 0;
  absl::StatusOr<ExperimentReport> r = RunExperiment(c);
  ASSERT_TRUE(r.ok());
  const double band = 3 * std::sqrt(0.21 / 400);
  int outside = 0;
  for (const ReportRow& row : r->rows) {
    if (!row.is_test) outside += row.bias > band;
  }
  EXPECT_LE(outside, 3);
}

TEST(ExperimentTest, RefusalsAreCountedNotFatal) {
  ExperimentConfig c = FixedConfig({"identity", "identity", "identity"},
                                   MechanismKind::kSubsamplingSq);
  absl::StatusOr<ResolvedParameters> p = ResolveParameters(c);
  ASSERT_TRUE(p.ok());
  c.mechanism.budget_mode = BudgetMode::kAlmostSure;
  c.mechanism.budget = 0.0;
  c.trials = 2;
  absl::StatusOr<ExperimentReport> r = RunExperiment(c);
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r->refusals, 2);
  EXPECT_EQ(r->summary.query_rows, 0);
}

TEST(ExperimentTest, ConfigErrors) {
  ExperimentConfig c = FixedConfig({"identity"}, MechanismKind::kSubsamplingSq);
  c.trials = 0;
  EXPECT_FALSE(ResolveParameters(c).ok());
  c = FixedConfig({"identity"}, MechanismKind::kMedian);
  EXPECT_FALSE(ResolveParameters(c).ok());
  c = FixedConfig({}, MechanismKind::kNaive);
  c.analyst.name = "random_correlation";
  c.analyst.rounds = 5;
  EXPECT_FALSE(ResolveParameters(c).ok());
  c.population = "uniform_pm1_cube";
  c.population_params = {{"d", 5}};
  EXPECT_TRUE(ResolveParameters(c).ok());
  c.analyst.params = {{"bogus", 1}};
  EXPECT_FALSE(ResolveParameters(c).ok());
}

TEST(ExperimentTest, ScheduledSampleSize) {
  ExperimentConfig c = FixedConfig({"identity"}, MechanismKind::kSubsamplingSq);
  c.n = 0;
  c.n_factor = 2.0;
  c.analyst.rounds = 10;
  absl::StatusOr<ResolvedParameters> p = ResolveParameters(c);
  ASSERT_TRUE(p.ok());
  EXPECT_EQ(p->n, static_cast<std::int64_t>(std::ceil(2 * p->advisory_n)));
  EXPECT_NEAR(p->epsilon, std::log(20.0) / p->n, 1e-15);
}

TEST(ReportTest, CsvShape) {
  EXPECT_EQ(FormatNumber(0.0), "0");
  EXPECT_EQ(FormatNumber(1.0 / 3.0), "0.333333333333");
  EXPECT_EQ(FormatNumber(2e-4), "0.0002");
  ReportRow row;
  row.query_id = "a,b";
  row.mechanism = "naive";
  row.within_bound = true;
  std::ostringstream out;
  WriteCsv({row}, out);
  EXPECT_EQ(out.str(), std::string(kCsvHeader) + "\n0,0,\"a,b\",naive,0,0,0,0,0,1,0\n");
}

}  // namespace
}  // namespace adasub
