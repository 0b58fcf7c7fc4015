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
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "adasub/cli/commands.h"
#include "adasub/cli/config.h"
#include "gtest/gtest.h"

namespace adasub::cli {
namespace {

namespace fs = std::filesystem;

constexpr char kValid[] = R"(
seed: 5
trials: 2
n: 60
population: {name: bernoulli, params: {p: 0.3}}
mechanism: {name: subsampling_sq, k: 10}
analyst: {name: fixed, T: 2, tau: 0.2, queries: [identity]}
)";

fs::path Scratch(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / "adasub_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

fs::path WriteFile(const std::string& name, const std::string& text) {
  const fs::path p = Scratch(name);
  std::ofstream(p) << text;
  return p;
}

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

TEST(ConfigTest, ParsesValidDocument) {
  absl::StatusOr<RunConfig> c = ParseRunConfig(kValid);
  ASSERT_TRUE(c.ok()) << c.status();
  EXPECT_EQ(c->experiment.seed, 5u);
  EXPECT_EQ(c->experiment.mechanism.k, 10);
  EXPECT_EQ(c->experiment.analyst.queries.size(), 1u);
}

TEST(ConfigTest, RejectsUnknownKeysByName) {
  std::string text = std::string(kValid) + "colour: blue\n";
  absl::StatusOr<RunConfig> c = ParseRunConfig(text);
  ASSERT_FALSE(c.ok());
  EXPECT_NE(c.status().message().find("colour"), std::string::npos);

  text = kValid;
  text.replace(text.find("k: 10"), 5, "kk: 10");
  c = ParseRunConfig(text);
  ASSERT_FALSE(c.ok());
  EXPECT_NE(c.status().message().find("mechanism.kk"), std::string::npos);
}

TEST(ConfigTest, RejectsUnknownMechanismByKey) {
  std::string text = kValid;
  text.replace(text.find("subsampling_sq"), 14, "laplace");
  absl::StatusOr<RunConfig> c = ParseRunConfig(text);
  ASSERT_FALSE(c.ok());
  EXPECT_NE(c.status().message().find("mechanism.name"), std::string::npos);
}

TEST(ConfigTest, AssertionsAndSuites) {
  std::string text = std::string(kValid) +
                     "assertions: {min_fraction_trials_all_within: 0.5, max_refusals: 0}\n"
                     "verify: [alkl]\n";
  absl::StatusOr<RunConfig> c = ParseRunConfig(text);
  ASSERT_TRUE(c.ok()) << c.status();
  ASSERT_EQ(c->assertions.size(), 2u);
  ExperimentSummary s;
  s.fraction_trials_all_within = 0.25;
  EXPECT_EQ(FailedAssertions(c->assertions, s).size(), 1u);
  EXPECT_FALSE(ParseRunConfig(std::string(kValid) + "assertions: {min_speed: 1}\n").ok());
  EXPECT_FALSE(ParseRunConfig(std::string(kValid) + "verify: [nope]\n").ok());
}

TEST(CmdRunTest, WritesOutputsAndIsDeterministic) {
  const fs::path config = WriteFile("valid.yaml", kValid);
  std::ostringstream out, err;
  RunOverrides o;
  o.out = Scratch("a.csv").string();
  ASSERT_EQ(CmdRun(config.string(), o, out, err), kExitOk) << err.str();
  EXPECT_TRUE(fs::exists(Scratch("a.summary.txt")));
  EXPECT_TRUE(fs::exists(Scratch("a.summary.json")));
  o.out = Scratch("b.csv").string();
  ASSERT_EQ(CmdRun(config.string(), o, out, err), kExitOk);
  EXPECT_EQ(Slurp(Scratch("a.csv")), Slurp(Scratch("b.csv")));

  o.seed = 6;
  o.out = Scratch("c.csv").string();
  ASSERT_EQ(CmdRun(config.string(), o, out, err), kExitOk);
  const std::string a = Slurp(Scratch("a.csv")), c = Slurp(Scratch("c.csv"));
  EXPECT_NE(a, c);
  EXPECT_EQ(std::count(a.begin(), a.end(), '\n'), std::count(c.begin(), c.end(), '\n'));
  EXPECT_EQ(a.substr(0, a.find('\n')), c.substr(0, c.find('\n')));
}

TEST(CmdRunTest, OutputDirectoryFromEnvironment) {
  const fs::path config = WriteFile("envrun.yaml", kValid);
  const fs::path dir = Scratch("envdir");
  ::setenv(kOutputDirEnv, dir.c_str(), 1);
  std::ostringstream out, err;
  EXPECT_EQ(CmdRun(config.string(), {}, out, err), kExitOk);
  ::unsetenv(kOutputDirEnv);
  EXPECT_TRUE(fs::exists(dir / "envrun.csv"));
}

TEST(CmdRunTest, ExitCodes) {
  std::ostringstream out, err;
  EXPECT_EQ(CmdRun(Scratch("missing.yaml").string(), {}, out, err), kExitConfigError);
  const fs::path bad = WriteFile("bad.yaml", "seed: [1\n");
  EXPECT_EQ(CmdRun(bad.string(), {}, out, err), kExitConfigError);
  const fs::path strict = WriteFile(
      "strict.yaml", std::string(kValid) + "assertions: {max_max_bias: -1}\n");
  RunOverrides o;
  o.out = Scratch("strict.csv").string();
  EXPECT_EQ(CmdRun(strict.string(), o, out, err), kExitAssertionFailure);
}

TEST(CmdVerifyTest, ExitCodes) {
  std::ostringstream out, err;
  EXPECT_EQ(CmdVerify("chi2-stability", 200, 1, out, err), kExitOk);
  EXPECT_NE(out.str().find("PASS"), std::string::npos);
  EXPECT_EQ(CmdVerify("unknown", 10, 1, out, err), kExitConfigError);
}

TEST(CmdParamsTest, Table) {
  std::ostringstream out, err;
  ParamsRequest q;
  q.n = 15000;
  q.T = 1000;
  EXPECT_EQ(CmdParams(q, out, err), kExitOk);
  EXPECT_NE(out.str().find("k               8478"), std::string::npos);
  q.tau = 1.0;
  EXPECT_EQ(CmdParams(q, out, err), kExitConfigError);
}

}  // namespace
}  // namespace adasub::cli
