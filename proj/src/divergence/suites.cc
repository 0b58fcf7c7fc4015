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

#include "adasub/divergence/suites.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "absl/strings/str_cat.h"
#include "adasub/core/dataset.h"
#include "adasub/divergence/contraction.h"
#include "adasub/divergence/divergence.h"
#include "adasub/divergence/exceed_mean.h"
#include "adasub/divergence/inequalities.h"
#include "adasub/divergence/instances.h"
#include "adasub/divergence/stability.h"
#include "adasub/engine/uniformity.h"
#include "json.hpp"

namespace adasub {
namespace {

using nlohmann::json;

constexpr double kSlack = 1e-10;
constexpr double kExceedMeanReference = 0.0357;

class SuiteRun {
 public:
  SuiteRun(std::string_view name, std::uint64_t seed)
      : root_(RandomSource(seed).Split(name)), seed_(seed) {
    result_.name = std::string(name);
  }

  RandomSource Instance(std::uint64_t i) const { return root_.Split(i); }

  void Record(bool ok, std::uint64_t index, const std::function<json()>& describe) {
    ++result_.instances;
    if (ok) return;
    ++result_.failures;
    result_.passed = false;
    if (result_.counterexample.empty()) {
      json j = describe();
      j["suite"] = result_.name;
      j["seed"] = seed_;
      j["instance"] = index;
      result_.counterexample = j.dump();
    }
  }

  void Stat(std::string key, double value) {
    result_.stats.emplace_back(std::move(key), value);
  }

  SuiteResult Finish() { return std::move(result_); }

 private:
  RandomSource root_;
  std::uint64_t seed_;
  SuiteResult result_;
};

struct TableInstance {
  int n = 0;
  TableQuerySpec spec;
  std::vector<Symbol> data;

  Dataset dataset() const { return Dataset::Of(SymbolElements(data)); }
  json ToJson() const {
    json j;
    j["n"] = n;
    j["w"] = spec.arity;
    j["ysize"] = spec.ysize;
    j["alphabet"] = spec.alphabet;
    j["data"] = data;
    if (spec.masses.empty()) {
      j["table"] = spec.outputs;
    } else {
      j["table_masses"] = spec.masses;
    }
    return j;
  }
};

TableInstance RandomTableInstance(RandomSource& rng, bool randomized) {
  TableInstance inst;
  inst.n = 3 + static_cast<int>(rng.UniformInt(6));
  const int w = 1 + static_cast<int>(rng.UniformInt(std::min(3, inst.n - 1)));
  const int ysize = 2 + static_cast<int>(rng.UniformInt(3));
  const int alphabet = 2 + static_cast<int>(rng.UniformInt(3));
  inst.spec = randomized ? RandomRandomizedTable(w, ysize, alphabet, rng)
                         : RandomDeterministicTable(w, ysize, alphabet, rng);
  inst.data = RandomSymbols(inst.n, alphabet, rng);
  return inst;
}

SuiteResult Chi2Stability(std::uint64_t trials, std::uint64_t seed) {
  SuiteRun run("chi2-stability", seed);
  double worst = -std::numeric_limits<double>::infinity();
  double worst_equality_gap = 0.0;
  std::uint64_t equality_instances = 0;
  for (std::uint64_t i = 0; i < trials; ++i) {
    RandomSource rng = run.Instance(i);
    const TableInstance inst = RandomTableInstance(rng, false);
    absl::StatusOr<StabilityReport> report =
        MeasureLeaveOneOutChiSquared(inst.spec.ToQuery(), inst.dataset());
    bool ok = report.ok() && report->measured <= report->bound + kSlack;
    if (report.ok()) {
      worst = std::max(worst, report->measured - report->bound);
      if (inst.spec.arity == 1) {
        ++equality_instances;
        const double gap = std::abs(report->measured - report->effective_bound);
        worst_equality_gap = std::max(worst_equality_gap, gap);
        ok = ok && gap <= kSlack;
      }
    }
    run.Record(ok, i, [&] {
      json j = inst.ToJson();
      if (report.ok()) {
        j["measured"] = report->measured;
        j["bound"] = report->bound;
        j["effective_bound"] = report->effective_bound;
      } else {
        j["error"] = report.status().ToString();
      }
      return j;
    });
  }
  run.Stat("max_measured_minus_bound", worst);
  run.Stat("w1_instances", static_cast<double>(equality_instances));
  run.Stat("w1_max_equality_gap", worst_equality_gap);
  return run.Finish();
}

void VarianceContraction(std::uint64_t trials, bool linear,
                         SuiteRun& run) {
  double worst = -std::numeric_limits<double>::infinity();
  for (std::uint64_t i = 0; i < trials; ++i) {
    RandomSource rng = run.Instance(i);
    const int n = 2 + static_cast<int>(rng.UniformInt(7));
    int w = static_cast<int>(rng.UniformInt(std::min(3, n - 1) + 1));
    if (linear) w = std::max(w, 1);
    std::vector<double> alpha;
    std::vector<double> f;
    if (linear) {
      alpha.resize(n);
      for (double& a : alpha) a = 2.0 * rng.Uniform() - 1.0;
      f = LinearSubsetFunction(alpha, w);
    } else {
      f = RandomSubsetFunction(n, w, rng);
    }
    absl::StatusOr<ContractionResult> r = VerifyVarianceContraction(f, n, w);
    bool ok = r.ok();
    if (ok) {
      const double excess = linear ? std::abs(r->lhs - r->rhs) : r->lhs - r->rhs;
      worst = std::max(worst, excess);
      ok = excess <= kSlack;
    }
    run.Record(ok, i, [&] {
      json j;
      j["n"] = n;
      j["w"] = w;
      j["f"] = f;
      if (linear) j["alpha"] = alpha;
      if (r.ok()) {
        j["lhs"] = r->lhs;
        j["rhs"] = r->rhs;
      }
      return j;
    });
  }
  run.Stat(linear ? "max_abs_lhs_minus_rhs" : "max_lhs_minus_rhs", worst);
}

std::vector<double> DrawPmf(std::size_t size, RandomSource& rng) {
  return rng.Bernoulli(0.5) ? RandomSparsePmf(size, rng) : RandomPmf(size, rng);
}

json PairJson(const std::vector<double>& d, const std::vector<double>& e, double tau,
              const absl::StatusOr<InequalityCheck>& check) {
  json j;
  j["D"] = d;
  j["E"] = e;
  j["tau"] = tau;
  if (check.ok()) {
    j["lhs"] = check->lhs;
    j["rhs"] = check->rhs;
  } else {
    j["error"] = check.status().ToString();
  }
  return j;
}

SuiteResult KlChi2(std::uint64_t trials, std::uint64_t seed) {
  SuiteRun run("kl-chi2", seed);
  double worst = -std::numeric_limits<double>::infinity();
  for (std::uint64_t i = 0; i < trials; ++i) {
    RandomSource rng = run.Instance(i);
    const std::size_t size = 2 + rng.UniformInt(5);
    std::vector<double> d = DrawPmf(size, rng);
    std::vector<double> e = DrawPmf(size, rng);
    if (RatioFloor(d, e) <= 0.0) {
      for (std::size_t y = 0; y < size; ++y) e[y] = 0.5 * (e[y] + d[y]);
    }
    const double tau = RatioFloor(d, e);
    absl::StatusOr<InequalityCheck> check = VerifyKlChiSquaredInequality(d, e, tau);
    if (check.ok() && std::isfinite(check->rhs)) {
      worst = std::max(worst, check->lhs - check->rhs);
    }
    run.Record(check.ok() && check->passed, i,
               [&] { return PairJson(d, e, tau, check); });
  }
  run.Stat("max_lhs_minus_rhs", worst);
  return run.Finish();
}

SuiteResult KlMixture(std::uint64_t trials, std::uint64_t seed) {
  SuiteRun run("kl-mixture", seed);
  constexpr double kTaus[] = {0.5, 0.1, 0.01};
  double worst = -std::numeric_limits<double>::infinity();
  for (std::uint64_t i = 0; i < trials; ++i) {
    RandomSource rng = run.Instance(i);
    const std::size_t size = 2 + rng.UniformInt(5);
    const std::vector<double> d = DrawPmf(size, rng);
    const std::vector<double> e = DrawPmf(size, rng);
    const double tau = kTaus[i % 3];
    absl::StatusOr<InequalityCheck> check = VerifyKlMixtureInequality(d, e, tau);
    if (check.ok()) worst = std::max(worst, check->lhs - check->rhs);
    run.Record(check.ok() && check->passed, i,
               [&] { return PairJson(d, e, tau, check); });
  }
  run.Stat("max_lhs_minus_rhs", worst);
  return run.Finish();
}

SuiteResult Alkl(std::uint64_t trials, std::uint64_t seed) {
  SuiteRun run("alkl", seed);
  double worst_general = -std::numeric_limits<double>::infinity();
  double worst_uniform = -std::numeric_limits<double>::infinity();
  std::uint64_t general_checked = 0;
  for (std::uint64_t i = 0; i < trials; ++i) {
    RandomSource rng = run.Instance(i);
    const TableInstance inst = RandomTableInstance(rng, i % 2 == 1);
    const Dataset sample = inst.dataset();
    const Query q = inst.spec.ToQuery();
    const int n = inst.n;
    const int w = inst.spec.arity;
    const int ysize = inst.spec.ysize;

    bool ok = true;
    json detail = inst.ToJson();
    absl::StatusOr<StabilityReport> chi2 = MeasureLeaveOneOutChiSquared(q, sample);
    ok = chi2.ok();
    // The general bound applies at mix = eps, a valid weight only when eps <= 1.
    if (ok && chi2->measured > 1e-12 && chi2->measured <= 1.0) {
      const double eps = chi2->measured;
      absl::StatusOr<Divergence> kl = MeasureLeaveOneOutKl(q, sample, eps);
      const double bound = *AlklBoundGeneral(eps, ysize);
      ok = kl.ok() && kl->is_finite() && kl->value() <= bound + kSlack;
      if (kl.ok() && kl->is_finite()) {
        worst_general = std::max(worst_general, kl->value() - bound);
      }
      ++general_checked;
      detail["eps"] = eps;
      detail["general_bound"] = bound;
      if (kl.ok()) detail["general_kl"] = kl->ToString();
    }

    const double p = (0.02 + 0.98 * rng.Uniform()) / ysize;
    absl::StatusOr<Query> smooth = Uniformize(q, p);
    absl::StatusOr<StabilityReport> smooth_chi2 =
        smooth.ok() ? MeasureLeaveOneOutChiSquared(*smooth, sample)
                    : absl::StatusOr<StabilityReport>(smooth.status());
    if (ok && smooth_chi2.ok()) {
      absl::StatusOr<Divergence> kl = MeasureLeaveOneOutKl(*smooth, sample, 0.0);
      const double bound = *AlklBoundUniform(smooth_chi2->measured, w, n, p);
      ok = kl.ok() && kl->is_finite() && kl->value() <= bound + kSlack;
      if (kl.ok() && kl->is_finite()) {
        worst_uniform = std::max(worst_uniform, kl->value() - bound);
      }
      detail["p"] = p;
      detail["uniform_bound"] = bound;
      if (kl.ok()) detail["uniform_kl"] = kl->ToString();
    } else {
      ok = false;
    }
    run.Record(ok, i, [&] { return detail; });
  }
  run.Stat("general_instances", static_cast<double>(general_checked));
  run.Stat("general_max_kl_minus_bound", worst_general);
  run.Stat("uniform_max_kl_minus_bound", worst_uniform);
  return run.Finish();
}

SuiteResult SampleExceedsMean(std::uint64_t trials, std::uint64_t seed) {
  SuiteRun run("sample-exceeds-mean", seed);
  double lowest = 1.0;
  auto check = [&](std::uint64_t index, const std::vector<double>& values, int n,
                   absl::StatusOr<ExceedMeanEstimate> estimate) {
    bool ok = estimate.ok();
    if (ok) {
      lowest = std::min(lowest, estimate->probability);
      const double slack = estimate->exact ? 0.0 : 4.0 * estimate->standard_error;
      ok = estimate->probability >= kExceedMeanReference - slack;
    }
    run.Record(ok, index, [&] {
      json j;
      j["values"] = values;
      j["n"] = n;
      if (estimate.ok()) {
        j["probability"] = estimate->probability;
        j["standard_error"] = estimate->standard_error;
        j["exact"] = estimate->exact;
      } else {
        j["error"] = estimate.status().ToString();
      }
      return j;
    });
  };
  for (std::uint64_t i = 0; i < trials; ++i) {
    RandomSource rng = run.Instance(i);
    const std::size_t size = 2 + rng.UniformInt(13);
    const int n = 1 + static_cast<int>(rng.UniformInt(size - 1));
    const bool binary = rng.Bernoulli(0.5);
    std::vector<double> values(size);
    for (double& v : values) v = binary ? (rng.Bernoulli(0.5) ? 1.0 : 0.0) : rng.Uniform();
    check(i, values, n, SampleExceedsMeanExact(values, n));
  }
  absl::StatusOr<std::vector<NamedExceedMeanProbe>> probes =
      StandardExceedMeanProbes(seed);
  if (!probes.ok()) {
    check(trials, {}, 0, probes.status());
  } else {
    for (std::size_t j = 0; j < probes->size(); ++j) {
      const NamedExceedMeanProbe& p = (*probes)[j];
      check(trials + j, p.values, p.n, p.estimate);
      run.Stat(p.name, p.estimate.probability);
    }
  }
  run.Stat("min_probability", lowest);
  run.Stat("floor", SampleExceedsMeanFloor());
  return run.Finish();
}

}  // namespace

const std::vector<std::string>& SuiteNames() {
  static const auto* names = new std::vector<std::string>{
      "chi2-stability", "var-contraction", "var-contraction-linear-equality",
      "kl-chi2",        "kl-mixture",      "alkl",
      "sample-exceeds-mean"};
  return *names;
}

std::uint64_t DefaultSuiteTrials(std::string_view name) {
  if (name == "var-contraction-linear-equality") return 200;
  if (name == "kl-chi2" || name == "kl-mixture") return 10000;
  if (name == "alkl") return 500;
  if (name == "sample-exceeds-mean") return 300;
  return 1000;
}

absl::StatusOr<SuiteResult> RunSuite(std::string_view name, std::uint64_t trials,
                                     std::uint64_t seed) {
  if (trials == 0) trials = DefaultSuiteTrials(name);
  if (name == "chi2-stability") return Chi2Stability(trials, seed);
  if (name == "var-contraction" || name == "var-contraction-linear-equality") {
    const bool linear = name == "var-contraction-linear-equality";
    SuiteRun run(name, seed);
    VarianceContraction(trials, linear, run);
    return run.Finish();
  }
  if (name == "kl-chi2") return KlChi2(trials, seed);
  if (name == "kl-mixture") return KlMixture(trials, seed);
  if (name == "alkl") return Alkl(trials, seed);
  if (name == "sample-exceeds-mean") return SampleExceedsMean(trials, seed);
  return absl::NotFoundError(absl::StrCat("unknown suite '", std::string(name), "'"));
}

}  // namespace adasub
