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

#include <cmath>
#include <vector>

#include "adasub/core/query_library.h"
#include "adasub/divergence/contraction.h"
#include "adasub/divergence/divergence.h"
#include "adasub/divergence/exceed_mean.h"
#include "adasub/divergence/inequalities.h"
#include "adasub/divergence/instances.h"
#include "adasub/divergence/stability.h"
#include "adasub/divergence/suites.h"
#include "adasub/engine/response_pmf.h"
#include "gtest/gtest.h"

namespace adasub {
namespace {

using V = std::vector<double>;

Dataset Symbols(std::vector<Symbol> v) { return Dataset::Of(SymbolElements(v)); }

double Kl(const V& d, const V& e) {
  absl::StatusOr<Divergence> r = KlDivergence(d, e);
  EXPECT_TRUE(r.ok());
  return r->ValueOr(INFINITY);
}

double Chi2(const V& d, const V& e) {
  absl::StatusOr<Divergence> r = ChiSquaredDivergence(d, e);
  EXPECT_TRUE(r.ok());
  return r->ValueOr(INFINITY);
}

TEST(KlDivergenceTest, Examples) {
  EXPECT_EQ(Kl({0.3, 0.7}, {0.3, 0.7}), 0.0);
  EXPECT_NEAR(Kl({1, 0}, {0.5, 0.5}), std::log(2.0), 1e-15);
  EXPECT_NEAR(Kl({0.5, 0.5}, {0.25, 0.75}), 0.143841036225890, 1e-12);
  absl::StatusOr<Divergence> inf = KlDivergence(V{0.5, 0.5}, V{1, 0});
  ASSERT_TRUE(inf.ok());
  EXPECT_TRUE(inf->is_infinite());
  EXPECT_FALSE(KlDivergence(V{1}, V{0.5, 0.5}).ok());
}

TEST(ChiSquaredTest, Examples) {
  EXPECT_EQ(Chi2({0.3, 0.7}, {0.3, 0.7}), 0.0);
  EXPECT_NEAR(Chi2({0.5, 0.5}, {0.25, 0.75}), 0.25, 1e-15);
  EXPECT_NEAR(Chi2({0.5, 0.5}, {0, 1}), 1.0, 1e-15);
  // E puts mass where D has none.
  absl::StatusOr<Divergence> inf = ChiSquaredDivergence(V{1, 0}, V{0.5, 0.5});
  ASSERT_TRUE(inf.ok());
  EXPECT_TRUE(inf->is_infinite());
  absl::StatusOr<double> on_support = ChiSquaredOnSupport(V{1, 0}, V{0.5, 0.5});
  ASSERT_TRUE(on_support.ok());
  EXPECT_NEAR(*on_support, 0.25, 1e-15);
}

TEST(ChiSquaredTest, ZeroOnlyOnEquality) {
  RandomSource rng(1);
  for (int i = 0; i < 200; ++i) {
    const V d = RandomPmf(4, rng);
    const V e = RandomPmf(4, rng);
    EXPECT_GT(Chi2(d, e), 0.0);
    EXPECT_GT(Kl(d, e), 0.0);
    EXPECT_EQ(Chi2(d, d), 0.0);
    EXPECT_EQ(Kl(d, d), 0.0);
  }
}

TEST(StabilityBoundTest, Examples) {
  EXPECT_NEAR(*ChiSquaredStabilityBound(3, 1, 2), 0.25, 1e-15);
  EXPECT_EQ(*ChiSquaredStabilityBound(7, 3, 1), 0.0);
  EXPECT_NEAR(*ChiSquaredStabilityBound(100, 1, 2), 1.0 / (99.0 * 99.0), 1e-18);
  EXPECT_FALSE(ChiSquaredStabilityBound(3, 3, 2).ok());
  EXPECT_FALSE(ChiSquaredStabilityBound(3, 0, 2).ok());
}

TEST(StabilityTest, HandEnumeratedIdentity) {
  absl::StatusOr<StabilityReport> r =
      MeasureLeaveOneOutChiSquared(IdentityQuery(), Symbols({1, 0, 0}));
  ASSERT_TRUE(r.ok());
  ASSERT_EQ(r->per_index.size(), 3u);
  EXPECT_NEAR(r->per_index[0], 0.5, 1e-15);
  EXPECT_NEAR(r->per_index[1], 0.125, 1e-15);
  EXPECT_NEAR(r->per_index[2], 0.125, 1e-15);
  EXPECT_NEAR(r->measured, 0.25, 1e-15);
  EXPECT_NEAR(r->bound, 0.25, 1e-15);
  EXPECT_NEAR(r->slack(), 0.0, 1e-15);
}

TEST(StabilityTest, ConstantMeasuresZero) {
  absl::StatusOr<StabilityReport> r =
      MeasureLeaveOneOutChiSquared(ConstantQuery({0, 1, 2}, 1, 2), Symbols({1, 0, 0, 2}));
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r->measured, 0.0);
}

TEST(StabilityTest, PerIndexAveragesToMeasured) {
  RandomSource rng(2);
  for (int i = 0; i < 100; ++i) {
    const int w = 1 + static_cast<int>(rng.UniformInt(3));
    const int n = w + 1 + static_cast<int>(rng.UniformInt(8 - w));
    const int ysize = 2 + static_cast<int>(rng.UniformInt(3));
    const Query q = RandomDeterministicTable(w, ysize, 3, rng).ToQuery();
    const Dataset s = Dataset::Of(SymbolElements(RandomSymbols(n, 3, rng)));
    absl::StatusOr<StabilityReport> r = MeasureLeaveOneOutChiSquared(q, s);
    ASSERT_TRUE(r.ok());
    double mean = 0.0;
    for (double v : r->per_index) mean += v / n;
    EXPECT_NEAR(mean, r->measured, 1e-12);
    EXPECT_LE(r->measured, r->bound + 1e-10);
    EXPECT_GE(r->measured, 0.0);
  }
}

TEST(StabilityTest, LeaveOneOutKl) {
  const Dataset s = Symbols({1, 0, 0});
  absl::StatusOr<Divergence> none = MeasureLeaveOneOutKl(IdentityQuery(), s, 0.0);
  ASSERT_TRUE(none.ok());
  EXPECT_TRUE(none->is_infinite());

  // Oracle: phi(S) = (2/3, 1/3); leaving out the 1 gives (1, 0), leaving out
  // a 0 gives (1/2, 1/2); each mixed with uniform at weight 1/4.
  const double mix = 0.25;
  auto mixed = [&](V e) {
    for (double& m : e) m = (1 - mix) * m + mix / 2;
    return e;
  };
  const V full = {2.0 / 3.0, 1.0 / 3.0};
  const double expected =
      (Kl(full, mixed({1, 0})) + 2 * Kl(full, mixed({0.5, 0.5}))) / 3.0;
  absl::StatusOr<Divergence> some = MeasureLeaveOneOutKl(IdentityQuery(), s, mix);
  ASSERT_TRUE(some.ok());
  ASSERT_TRUE(some->is_finite());
  EXPECT_NEAR(some->value(), expected, 1e-12);
  EXPECT_LE(some->value(), 0.25 * (3 + 2 * std::log(2 / 0.25)));

  absl::StatusOr<Divergence> constant =
      MeasureLeaveOneOutKl(ConstantQuery({4}, 0), s, 0.3);
  ASSERT_TRUE(constant.ok());
  EXPECT_EQ(constant->value(), 0.0);
}

TEST(AlklBoundTest, Examples) {
  EXPECT_NEAR(*AlklBoundGeneral(0.25, 2), 0.25 * (3 + 2 * std::log(8.0)), 1e-15);
  EXPECT_NEAR(*AlklBoundGeneral(0.25, 2), 1.7897, 1e-4);
  EXPECT_NEAR(*AlklBoundGeneral(2.0, 2), 6.0, 1e-15);
  EXPECT_NEAR(*AlklBoundGeneral(1e-4, 2), 2.281e-3, 1e-6);
  EXPECT_FALSE(AlklBoundGeneral(0.0, 2).ok());
  EXPECT_NEAR(*AlklBoundUniform(0.25, 1, 3, 1.0 / 3.0), 0.42329, 1e-5);
  EXPECT_NEAR(*AlklBoundUniform(1.0, 1, 100, 0.1), 1.0 + std::log(1.1), 1e-15);
  EXPECT_NEAR(*AlklBoundUniform(0.5, 1, 1000000000, 0.5), 0.5, 1e-8);
  EXPECT_FALSE(AlklBoundUniform(0.5, 1, 10, 0.0).ok());
}

TEST(ContractionTest, HandEnumerated) {
  // Subsets of [3] of size 1 in order {0}, {1}, {2}; alpha = (1, 0, 0).
  absl::StatusOr<ContractionResult> r = VerifyVarianceContraction(V{1, 0, 0}, 3, 1);
  ASSERT_TRUE(r.ok());
  EXPECT_NEAR(r->lhs, 1.0 / 18.0, 1e-15);
  EXPECT_NEAR(r->rhs, 1.0 / 18.0, 1e-15);
  absl::StatusOr<ContractionResult> c = VerifyVarianceContraction(V(10, 0.3), 5, 2);
  ASSERT_TRUE(c.ok());
  EXPECT_NEAR(c->lhs, 0.0, 1e-15);
  EXPECT_NEAR(c->rhs, 0.0, 1e-15);
  EXPECT_FALSE(VerifyVarianceContraction(V{1}, 1, 1).ok());
  EXPECT_FALSE(VerifyVarianceContraction(V{1, 2}, 3, 1).ok());
}

TEST(ContractionTest, LinearIsTightRandomIsBounded) {
  RandomSource rng(3);
  for (int i = 0; i < 100; ++i) {
    const int n = 2 + static_cast<int>(rng.UniformInt(7));
    const int w = static_cast<int>(rng.UniformInt(std::min(3, n - 1) + 1));
    V alpha(n);
    for (double& a : alpha) a = rng.Uniform() - 0.5;
    absl::StatusOr<ContractionResult> lin =
        VerifyVarianceContraction(LinearSubsetFunction(alpha, w), n, w);
    ASSERT_TRUE(lin.ok());
    EXPECT_NEAR(lin->lhs, lin->rhs, 1e-10);
    absl::StatusOr<ContractionResult> any =
        VerifyVarianceContraction(RandomSubsetFunction(n, w, rng), n, w);
    ASSERT_TRUE(any.ok());
    EXPECT_LE(any->lhs, any->rhs + 1e-10);
  }
}

TEST(InequalityTest, KlChiSquared) {
  absl::StatusOr<InequalityCheck> same = VerifyKlChiSquaredInequality(V{0.2, 0.8}, V{0.2, 0.8}, 1.0);
  ASSERT_TRUE(same.ok());
  EXPECT_TRUE(same->passed);
  absl::StatusOr<InequalityCheck> r =
      VerifyKlChiSquaredInequality(V{0.5, 0.5}, V{0.25, 0.75}, 0.5);
  ASSERT_TRUE(r.ok());
  EXPECT_TRUE(r->passed);
  EXPECT_NEAR(r->lhs, 0.143841036225890, 1e-12);
  EXPECT_NEAR(r->rhs, (1 + std::log(2.0)) * 0.25, 1e-15);
  // E(y) >= tau D(y) fails at y = 0: a precondition error, not a failed check.
  absl::StatusOr<InequalityCheck> bad = VerifyKlChiSquaredInequality(V{1, 0}, V{0, 1}, 0.5);
  EXPECT_TRUE(absl::IsFailedPrecondition(bad.status()));
}

TEST(InequalityTest, KlMixture) {
  absl::StatusOr<InequalityCheck> r = VerifyKlMixtureInequality(V{1, 0}, V{0, 1}, 0.5);
  ASSERT_TRUE(r.ok());
  EXPECT_TRUE(r->passed);
  EXPECT_NEAR(r->lhs, std::log(4.0), 1e-15);
  EXPECT_NEAR(r->rhs, (1 + std::log(4.0)) * 1.5 + 0.5, 1e-12);
  absl::StatusOr<InequalityCheck> tiny =
      VerifyKlMixtureInequality(V{0.3, 0.7}, V{0.3, 0.7}, 1e-3);
  ASSERT_TRUE(tiny.ok());
  EXPECT_TRUE(tiny->passed);
  EXPECT_FALSE(VerifyKlMixtureInequality(V{0.3, 0.7}, V{0.3, 0.7}, 0.0).ok());
}

TEST(ExceedMeanTest, Probes) {
  EXPECT_NEAR(SampleExceedsMeanFloor(), (2 * std::sqrt(3.0) - 3) / 13, 1e-15);
  EXPECT_GT(SampleExceedsMeanFloor(), 0.0357);
  RandomSource rng(4);
  const V equal(12, 0.4);
  absl::StatusOr<ExceedMeanEstimate> e = SampleExceedsMeanProbe(equal, 5, 1000, rng);
  ASSERT_TRUE(e.ok());
  EXPECT_EQ(e->probability, 1.0);
  // Alternating 0/1 of length 10, n = 5: x <= 1 on 1 + 25 of the 252
  // subsets.
  V alternating;
  for (int i = 0; i < 10; ++i) alternating.push_back(i % 2);
  absl::StatusOr<ExceedMeanEstimate> exact = SampleExceedsMeanExact(alternating, 5);
  ASSERT_TRUE(exact.ok());
  EXPECT_TRUE(exact->exact);
  EXPECT_NEAR(exact->probability, 226.0 / 252.0, 1e-15);
  EXPECT_FALSE(SampleExceedsMeanProbe(equal, 12, 10, rng).ok());
  EXPECT_FALSE(SampleExceedsMeanExact(V{0.5, 2.0}, 1).ok());
}

TEST(ExceedMeanTest, StandardProbes) {
  absl::StatusOr<std::vector<NamedExceedMeanProbe>> probes = StandardExceedMeanProbes(1);
  ASSERT_TRUE(probes.ok());
  ASSERT_EQ(probes->size(), 3u);
  for (const NamedExceedMeanProbe& p : *probes) {
    EXPECT_GE(p.estimate.probability, 0.0357 - 4 * p.estimate.standard_error) << p.name;
  }
  EXPECT_TRUE((*probes)[2].estimate.exact);
}

TEST(SuiteTest, AllSuitesPassSmall) {
  for (const std::string& name : SuiteNames()) {
    absl::StatusOr<SuiteResult> r = RunSuite(name, 100, 5);
    ASSERT_TRUE(r.ok()) << name;
    EXPECT_TRUE(r->passed) << name << " " << r->counterexample;
    EXPECT_GE(r->instances, 100u);
  }
  EXPECT_TRUE(absl::IsNotFound(RunSuite("nope", 1, 1).status()));
}

TEST(SuiteTest, DeterministicGivenSeed) {
  absl::StatusOr<SuiteResult> a = RunSuite("kl-mixture", 200, 9);
  absl::StatusOr<SuiteResult> b = RunSuite("kl-mixture", 200, 9);
  ASSERT_TRUE(a.ok() && b.ok());
  EXPECT_EQ(a->stats, b->stats);
}

}  // namespace
}  // namespace adasub
