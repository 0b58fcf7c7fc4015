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

#ifndef ADASUB_CLI_COMMANDS_H_
#define ADASUB_CLI_COMMANDS_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace adasub::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntimeError = 1;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitAssertionFailure = 3;

struct RunOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  std::optional<std::string> out;
};

// Runs the experiment in the config, writes <out>.csv plus .summary.txt and
// .summary.json beside it, then checks the config's assertions and suites.
int CmdRun(const std::string& config_path, const RunOverrides& overrides,
           std::ostream& out, std::ostream& err);

// Runs one property suite ("all" runs each in turn). trials = 0 uses the
// suite's default size.
int CmdVerify(const std::string& suite, std::uint64_t trials, std::uint64_t seed,
              std::ostream& out, std::ostream& err);

struct ParamsRequest {
  bool median = false;
  // 0 means: use the advisory minimum.
  std::int64_t n = 0;
  std::int64_t T = 1;
  double tau = 0.1;
  double delta = 0.1;
  double c_epsilon = 1.0;
  double c_k = 8.0;
  double c_m = 8.0;
  int w = 1;
  std::int64_t r_max = 2;
};

int CmdParams(const ParamsRequest& request, std::ostream& out, std::ostream& err);

// Entry point of the adasub binary.
int Main(int argc, char** argv);

}  // namespace adasub::cli

#endif  // ADASUB_CLI_COMMANDS_H_
