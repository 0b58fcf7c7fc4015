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

#include "adasub/harness/experiment.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <memory>
#include <mutex>
#include <thread>

#include "absl/strings/str_cat.h"
#include "adasub/core/expectation.h"
#include "adasub/engine/subsample.h"
#include "adasub/harness/analyst.h"

namespace adasub {
namespace {

constexpr std::uint64_t kPopulationLawCap = 50'000'000;

struct TrialResult {
  std::vector<ReportRow> rows;
  double ledger_total = 0.0;
  std::int64_t refusals = 0;
  absl::Status status;
};

double Param(const AnalystSpec& spec, const std::string& key, double fallback) {
  auto it = spec.params.find(key);
  return it == spec.params.end() ? fallback : it->second;
}

absl::Status CheckParamKeys(const AnalystSpec& spec,
                            const std::vector<std::string>& allowed) {
  for (const auto& [key, value] : spec.params) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      return absl::InvalidArgumentError(
          absl::StrCat("analyst ", spec.name, " has no parameter '", key, "'"));
    }
  }
  return absl::OkStatus();
}

bool IsMedianAnalyst(const AnalystSpec& spec) { return spec.name == "median_drift"; }

absl::StatusOr<std::unique_ptr<SqAnalyst>> MakeSqAnalyst(const AnalystSpec& spec) {
  if (spec.name == "fixed") {
    if (absl::Status s = CheckParamKeys(spec, {}); !s.ok()) return s;
    if (spec.queries.empty()) {
      return absl::InvalidArgumentError("fixed analyst needs a nonempty query list");
    }
    std::vector<TestQuery> parsed;
    for (const std::string& d : spec.queries) {
      absl::StatusOr<TestQuery> q = ParseTestQuery(d);
      if (!q.ok()) return q.status();
      parsed.push_back(*std::move(q));
    }
    std::vector<TestQuery> queries;
    for (std::int64_t t = 0; t < spec.rounds; ++t) {
      queries.push_back(parsed[static_cast<std::size_t>(t) % parsed.size()]);
    }
    return MakeFixedAnalyst(std::move(queries));
  }
  if (spec.name == "random_correlation") {
    if (absl::Status s = CheckParamKeys(spec, {"center", "adaptive_queries"}); !s.ok()) {
      return s;
    }
    RandomCorrelationOptions options;
    options.rounds = spec.rounds;
    options.center = Param(spec, "center", 0.5);
    options.adaptive_queries = Param(spec, "adaptive_queries", 0.0) != 0.0;
    return MakeRandomCorrelationAnalyst(options);
  }
  return absl::InvalidArgumentError(
      absl::StrCat("unknown statistical-query analyst '", spec.name, "'"));
}

absl::StatusOr<std::unique_ptr<MedianAnalyst>> MakeMedianAnalystFromSpec(
    const AnalystSpec& spec) {
  if (absl::Status s =
          CheckParamKeys(spec, {"max_arity", "grid_points", "grid_lo", "grid_hi"});
      !s.ok()) {
    return s;
  }
  MedianDriftOptions options;
  options.rounds = spec.rounds;
  options.max_arity = static_cast<int>(Param(spec, "max_arity", 4));
  options.grid_points = static_cast<int>(Param(spec, "grid_points", 64));
  options.grid_lo = Param(spec, "grid_lo", -4.0);
  options.grid_hi = Param(spec, "grid_hi", 4.0);
  if (options.max_arity < 1 || options.grid_points < 2 ||
      !(options.grid_lo < options.grid_hi)) {
    return absl::InvalidArgumentError("median_drift needs max_arity >= 1, "
                                      "grid_points >= 2 and grid_lo < grid_hi");
  }
  return MakeMedianDriftAnalyst(options);
}

// The smallest range value whose cumulative mass reaches 1/2.
double PopulationMedian(const ResponsePmf& law) {
  double cumulative = 0.0;
  for (std::size_t j = 0; j < law.size(); ++j) {
    cumulative += law.masses[j];
    if (cumulative >= 0.5 - 1e-12) return law.range[j];
  }
  return law.range.back();
}

ReportRow Row(std::int64_t trial, std::int64_t t, std::string id, MechanismKind kind) {
  ReportRow row;
  row.trial = trial;
  row.t = t;
  row.query_id = std::move(id);
  row.mechanism = MechanismName(kind);
  return row;
}

class TrialRunner {
 public:
  TrialRunner(const ExperimentConfig& config, const ResolvedParameters& params,
              const Population& population)
      : config_(config), params_(params), population_(population) {}

  TrialResult Run(std::int64_t trial) const {
    TrialResult result;
    const RandomSource root =
        RandomSource(config_.seed).Split("trial").Split(static_cast<std::uint64_t>(trial));
    RandomSource data_rng = root.Split("data");
    const Dataset sample =
        population_.Sample(static_cast<std::size_t>(params_.n), data_rng);
    BudgetLedger ledger;
    if (config_.mechanism.budget_mode == BudgetMode::kAlmostSure) {
      ledger = BudgetLedger(BudgetMode::kAlmostSure, config_.mechanism.budget);
    }
    if (config_.mechanism.kind == MechanismKind::kMedian) {
      result.status = RunMedian(trial, root, sample, std::move(ledger), result);
    } else {
      result.status = RunSq(trial, root, sample, std::move(ledger), result);
    }
    return result;
  }

 private:
  absl::Status RunSq(std::int64_t trial, const RandomSource& root, const Dataset& sample,
                     BudgetLedger ledger, TrialResult& result) const {
    const MechanismKind kind = config_.mechanism.kind;
    absl::StatusOr<std::unique_ptr<SqAnalyst>> analyst = MakeSqAnalyst(config_.analyst);
    if (!analyst.ok()) return analyst.status();
    std::optional<SqSession> session;
    if (kind == MechanismKind::kSubsamplingSq) {
      absl::StatusOr<SqSession> created =
          SqSession::Create(sample, {params_.epsilon, params_.k, config_.analyst.delta},
                            root.Split("mechanism"), std::move(ledger));
      if (!created.ok()) return created.status();
      session.emplace(*std::move(created));
    }
    const double tau = config_.analyst.tau;
    const RandomSource analyst_rng = root.Split("analyst");
    const SampleView view = sample.View();
    std::vector<double> responses;
    const std::int64_t rounds = (*analyst)->rounds();
    for (std::int64_t t = 1; t <= rounds; ++t) {
      RandomSource rng = analyst_rng.Split(static_cast<std::uint64_t>(t));
      const TestQuery q = (*analyst)->NextQuery(t, responses, rng);
      absl::StatusOr<Moments> truth = population_.TestMoments(q);
      if (!truth.ok()) return truth.status();
      absl::StatusOr<Estimate> on_sample = ExpectationOnSample(q, view);
      if (!on_sample.ok()) return on_sample.status();

      ReportRow row = Row(trial, t, q.id, kind);
      row.sample_value = on_sample->value;
      if (session) {
        absl::StatusOr<double> answer = session->Answer(q);
        if (absl::IsResourceExhausted(answer.status())) {
          ++result.refusals;
          break;
        }
        if (!answer.ok()) return answer.status();
        row.answer = *answer;
        row.cost = session->transcript().records().back().cost;
      } else {
        row.answer = on_sample->value;
      }
      row.truth = truth->mean;
      row.bias = std::abs(row.answer - row.truth);
      row.threshold = SqAccuracyThreshold(row.truth, tau);
      row.within_bound = row.bias <= row.threshold;
      result.rows.push_back(row);
      responses.push_back(row.answer);
    }

    RandomSource test_rng = analyst_rng.Split("tests");
    const std::vector<TestQuery> tests = (*analyst)->Tests(responses, test_rng);
    for (std::size_t j = 0; j < tests.size(); ++j) {
      const TestQuery& psi = tests[j];
      absl::StatusOr<Moments> truth = population_.TestMoments(psi);
      if (!truth.ok()) return truth.status();
      absl::StatusOr<Estimate> on_sample = ExpectationOnSample(psi, view);
      if (!on_sample.ok()) return on_sample.status();
      ReportRow row =
          Row(trial, rounds + static_cast<std::int64_t>(j) + 1, "test/" + psi.id, kind);
      row.is_test = true;
      row.sample_value = on_sample->value;
      row.truth = truth->mean;
      row.bias = std::abs(row.sample_value - row.truth);
      row.answer = ErrorFromGap(row.bias, truth->variance, psi.arity);
      row.threshold = SqAccuracyThreshold(row.truth, tau);
      row.within_bound = row.bias <= row.threshold;
      result.rows.push_back(row);
    }
    result.ledger_total = session ? session->ledger().total() : 0.0;
    return absl::OkStatus();
  }

  absl::Status RunMedian(std::int64_t trial, const RandomSource& root,
                         const Dataset& sample, BudgetLedger ledger,
                         TrialResult& result) const {
    absl::StatusOr<std::unique_ptr<MedianAnalyst>> analyst =
        MakeMedianAnalystFromSpec(config_.analyst);
    if (!analyst.ok()) return analyst.status();
    absl::StatusOr<MedianSession> session = MedianSession::Create(
        sample, {params_.k, config_.mechanism.add_noise}, root.Split("mechanism"),
        std::move(ledger));
    if (!session.ok()) return session.status();

    const RandomSource analyst_rng = root.Split("analyst");
    const RandomSource sample_value_rng = root.Split("sample-value");
    Subsampler subsampler(sample.View());
    std::vector<double> responses;
    std::vector<double> draws;
    for (std::int64_t t = 1; t <= (*analyst)->rounds(); ++t) {
      RandomSource rng = analyst_rng.Split(static_cast<std::uint64_t>(t));
      const Query q = (*analyst)->NextQuery(t, responses, rng);
      absl::StatusOr<ResponsePmf> law = population_.ResponseLaw(q, kPopulationLawCap);
      if (!law.ok()) return law.status();

      absl::StatusOr<double> answer = session->Answer(q);
      if (absl::IsResourceExhausted(answer.status())) {
        ++result.refusals;
        break;
      }
      if (!answer.ok()) return answer.status();

      RandomSource draw_rng = sample_value_rng.Split(static_cast<std::uint64_t>(t));
      draws.clear();
      for (std::int64_t d = 0; d < config_.mechanism.sample_value_draws; ++d) {
        absl::StatusOr<double> y = subsampler.Answer(q, draw_rng);
        if (!y.ok()) return y.status();
        draws.push_back(*y);
      }
      ReportRow row = Row(trial, t, q.id, MechanismKind::kMedian);
      row.answer = *answer;
      if (!draws.empty()) {
        auto mid = draws.begin() + static_cast<std::ptrdiff_t>((draws.size() - 1) / 2);
        std::nth_element(draws.begin(), mid, draws.end());
        row.sample_value = *mid;
      }
      row.truth = PopulationMedian(*law);
      row.bias = std::abs(row.answer - row.truth);
      row.threshold = config_.mechanism.median_mass;
      row.within_bound = IsApproximateMedian(*law, row.answer, row.threshold);
      row.cost = session->transcript().records().back().cost;
      result.rows.push_back(row);
      responses.push_back(row.answer);
    }
    result.ledger_total = session->ledger().total();
    return absl::OkStatus();
  }

  const ExperimentConfig& config_;
  const ResolvedParameters& params_;
  const Population& population_;
};

}  // namespace

absl::StatusOr<MechanismKind> ParseMechanismKind(const std::string& name) {
  if (name == "subsampling_sq") return MechanismKind::kSubsamplingSq;
  if (name == "naive") return MechanismKind::kNaive;
  if (name == "median") return MechanismKind::kMedian;
  return absl::InvalidArgumentError(absl::StrCat(
      "unknown mechanism '", name, "' (known: subsampling_sq, naive, median)"));
}

std::string MechanismName(MechanismKind kind) {
  switch (kind) {
    case MechanismKind::kSubsamplingSq:
      return "subsampling_sq";
    case MechanismKind::kNaive:
      return "naive";
    case MechanismKind::kMedian:
      return "median";
  }
  return "unknown";
}

absl::StatusOr<ResolvedParameters> ResolveParameters(const ExperimentConfig& config) {
  if (config.trials < 1) return absl::InvalidArgumentError("trials must be >= 1");
  if (config.analyst.rounds < 1) return absl::InvalidArgumentError("T must be >= 1");
  if (config.n < 0) return absl::InvalidArgumentError("n must be >= 0");
  if (config.n == 0 && !(config.n_factor > 0.0)) {
    return absl::InvalidArgumentError("n = 0 (scheduled) needs a positive n_factor");
  }
  absl::StatusOr<Population> population =
      MakePopulation(config.population, config.population_params);
  if (!population.ok()) return population.status();

  const bool median = config.mechanism.kind == MechanismKind::kMedian;
  if (median != IsMedianAnalyst(config.analyst)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "analyst '", config.analyst.name, "' does not fit mechanism '",
        MechanismName(config.mechanism.kind), "'"));
  }
  if (config.analyst.name == "random_correlation") {
    const auto* cube = std::get_if<ProductCube>(&population->law());
    if (cube == nullptr ||
        cube->dim() < static_cast<std::size_t>(config.analyst.rounds)) {
      return absl::InvalidArgumentError(
          "random_correlation needs a cube population with dimension >= T");
    }
  }

  ResolvedParameters out;
  if (median) {
    absl::StatusOr<std::unique_ptr<MedianAnalyst>> analyst =
        MakeMedianAnalystFromSpec(config.analyst);
    if (!analyst.ok()) return analyst.status();
    if (population->ground_truth() == nullptr) {
      return absl::InvalidArgumentError("median experiments need a listed population");
    }
    const std::vector<int> arities = (*analyst)->PlannedArities();
    const std::vector<std::int64_t> sizes = (*analyst)->PlannedRangeSizes();
    absl::StatusOr<MedianParams> schedule =
        ComputeMedianParams(std::max<std::int64_t>(config.n, 1), config.analyst.rounds,
                            arities, sizes, config.analyst.delta,
                            config.mechanism.median_constants);
    if (!schedule.ok()) return schedule.status();
    out.k = config.mechanism.median_k > 0 ? config.mechanism.median_k : schedule->k;
    out.advisory_n = schedule->advisory_n;
    out.n = config.n > 0 ? config.n
                         : static_cast<std::int64_t>(
                               std::ceil(config.n_factor * schedule->advisory_n));
    return out;
  }

  absl::StatusOr<SqParams> schedule =
      ComputeSqParams(std::max<std::int64_t>(config.n, 1), config.analyst.rounds,
                      config.analyst.tau, config.analyst.delta,
                      config.mechanism.sq_constants);
  if (!schedule.ok()) return schedule.status();
  out.advisory_n = schedule->advisory_n;
  out.n = config.n;
  if (out.n == 0) {
    out.n = static_cast<std::int64_t>(std::ceil(config.n_factor * schedule->advisory_n));
    schedule = ComputeSqParams(out.n, config.analyst.rounds, config.analyst.tau,
                               config.analyst.delta, config.mechanism.sq_constants);
    if (!schedule.ok()) return schedule.status();
  }
  out.epsilon = config.mechanism.epsilon >= 0.0 ? config.mechanism.epsilon
                                                : schedule->epsilon;
  out.k = config.mechanism.k > 0 ? config.mechanism.k : schedule->k;
  if (!(out.epsilon < 0.5)) return absl::InvalidArgumentError("epsilon must be < 1/2");
  absl::StatusOr<std::unique_ptr<SqAnalyst>> analyst = MakeSqAnalyst(config.analyst);
  if (!analyst.ok()) return analyst.status();
  return out;
}

absl::StatusOr<ExperimentReport> RunExperiment(const ExperimentConfig& config) {
  absl::StatusOr<ResolvedParameters> params = ResolveParameters(config);
  if (!params.ok()) return params.status();
  absl::StatusOr<Population> population =
      MakePopulation(config.population, config.population_params);
  if (!population.ok()) return population.status();

  const TrialRunner runner(config, *params, *population);
  std::vector<TrialResult> results(static_cast<std::size_t>(config.trials));
  std::atomic<std::int64_t> next{0};
  auto work = [&] {
    for (std::int64_t i = next++; i < config.trials; i = next++) {
      results[static_cast<std::size_t>(i)] = runner.Run(i);
    }
  };
  int threads = config.threads > 0 ? config.threads
                                   : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::clamp<int>(threads, 1, static_cast<int>(config.trials));
  if (threads == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(work);
    for (std::thread& th : pool) th.join();
  }

  ExperimentReport report;
  report.config = config;
  report.parameters = *params;
  for (TrialResult& r : results) {
    if (!r.status.ok()) return r.status;
    report.rows.insert(report.rows.end(), std::make_move_iterator(r.rows.begin()),
                       std::make_move_iterator(r.rows.end()));
    report.ledger_totals.push_back(r.ledger_total);
    report.refusals += r.refusals;
  }
  report.summary = Summarize(report.rows, config.trials, params->n, report.refusals);
  return report;
}

}  // namespace adasub
