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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "qss/adversary.hpp"
#include "qss/protocol.hpp"

namespace qss::cli {
namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "qss");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), {}};
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("qss_cli_test_" + name);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(invoke({"verify", "--d", "1..3"}).code, kExitUsage);
  EXPECT_EQ(invoke({"verify", "--d", "17"}).code, kExitUsage);
  EXPECT_EQ(invoke({"verify", "--d", "5..3"}).code, kExitUsage);
  EXPECT_EQ(invoke({"run", "--d", "3", "--n", "0"}).code, kExitUsage);
  EXPECT_EQ(invoke({"run", "--d", "33", "--n", "2"}).code, kExitUsage);
  EXPECT_EQ(invoke({"run", "--d", "3", "--n", "2", "--alpha", "3"}).code, kExitUsage);
  EXPECT_EQ(invoke({"run", "--d", "3", "--n", "2", "--alpha-mode", "wild"}).code, kExitUsage);
  EXPECT_EQ(invoke({"run", "--d", "3", "--n", "2", "--test-fraction", "2"}).code, kExitUsage);
  EXPECT_EQ(invoke({"run", "--d", "3", "--bogus"}).code, kExitUsage);
  EXPECT_EQ(invoke({}).code, kExitUsage);
  EXPECT_EQ(invoke({"attack", "--d", "2", "--n", "2", "--trials", "0", "--adversary", "bob-ir"}).code, kExitUsage);
  const Result none = invoke({"attack", "--d", "2", "--n", "2", "--trials", "5", "--adversary", "none"});
  EXPECT_EQ(none.code, kExitUsage);
  const Result unknown = invoke({"run", "--d", "2", "--n", "2", "--adversary", "mallory"});
  EXPECT_EQ(unknown.code, kExitUsage);
  EXPECT_NE(unknown.err.find("eve-ir, bob-ir, bob-entangle"), std::string::npos);
  EXPECT_EQ(invoke({"attack", "--d", "17", "--n", "2", "--trials", "5", "--adversary", "bob-entangle"}).code,
            kExitUsage);
}

TEST(Cli, HelpExitsCleanly) { EXPECT_EQ(invoke({"--help"}).code, kExitOk); }

TEST(Cli, VerifySmallRange) {
  const auto path = temp_path("verify.json");
  const Result r = invoke({"verify", "--d", "2..4", "--out", path.string()});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("PASS"), std::string::npos);
  EXPECT_NE(slurp(path).find("\"passed\": true"), std::string::npos);
}

TEST(Cli, RunSummaryAndDeterminism) {
  const auto a = temp_path("run_a.json"), b = temp_path("run_b.json"), t = temp_path("run.txt");
  const Result first = invoke({"run", "--d", "3", "--n", "16", "--seed", "1", "--out", a.string(), "--transcript", t.string()});
  const Result second = invoke({"run", "--d", "3", "--n", "16", "--seed", "1", "--out", b.string()});
  EXPECT_EQ(first.code, kExitOk);
  EXPECT_EQ(first.out, "aborted=false key_length=16 key_agreement=true\n");
  EXPECT_EQ(slurp(a), slurp(b));
  EXPECT_FALSE(slurp(t).empty());
}

TEST(Cli, StrictExitOnAbort) {
  ProtocolConfig c;
  c.d = Dim(2);
  c.n = 8;
  std::uint64_t seed = 0;
  for (;; ++seed) {
    c.seed = seed;
    auto bob = bob_intercept_resend(c.d);
    if (run_protocol(c, bob.get()).aborted) break;
  }
  const std::vector<std::string> args{"run", "--d", "2", "--n", "8", "--adversary", "bob-ir", "--seed",
                                      std::to_string(seed)};
  EXPECT_EQ(invoke(args).code, kExitOk);
  auto strict = args;
  strict.push_back("--strict");
  const Result r = invoke(strict);
  EXPECT_EQ(r.code, kExitFailure);
  EXPECT_NE(r.out.find("aborted=true"), std::string::npos);
}

TEST(Cli, UnwritableOutputNamesPath) {
  const Result r = invoke({"run", "--d", "2", "--n", "2", "--out", "/nonexistent-dir/report.json"});
  EXPECT_EQ(r.code, kExitFailure);
  EXPECT_NE(r.err.find("/nonexistent-dir/report.json"), std::string::npos);
}

TEST(Cli, AttackReportsAnalytic) {
  const Result r = invoke({"attack", "--d", "2", "--n", "4", "--trials", "200", "--adversary", "bob-ir", "--seed", "3"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("analytic=0.683594"), std::string::npos);
  EXPECT_NE(r.out.find("z="), std::string::npos);
}

}  // namespace
}  // namespace qss::cli
