// Copyright 2026 The qss-sim Authors
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

#ifndef QSS_TOOLS_COMMANDS_HPP
#define QSS_TOOLS_COMMANDS_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace qss::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

inline constexpr int kVerifyLimit = 16;
inline constexpr int kSimulationLimit = 32;

struct CliConfig {
  std::string d_range = "2..8";  // verify only
  int d = 2;
  int n = 8;
  std::optional<int> alpha;
  std::string alpha_mode = "fixed";
  std::string adversary = "none";
  std::string mask = "exact";
  std::string order = "per-round";
  std::int64_t trials = 1000;
  int threads = 1;
  std::uint64_t seed = 0;
  std::string out;
  std::string transcript;
  std::optional<double> test_fraction;
  bool strict = false;
};

int cmd_verify(const CliConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_run(const CliConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_attack(const CliConfig& cfg, std::ostream& out, std::ostream& err);

/// Full command line entry point (argv[0] is the program name).
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qss::cli

#endif  // QSS_TOOLS_COMMANDS_HPP
