// Copyright 2026 The LUBA Authors
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
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

namespace {

namespace fs = std::filesystem;

struct CliRun {
  int code = -1;
  std::string output;
};

CliRun Cli(const std::string& args) {
  std::string command =
      std::string(LUBA_CLI_PATH) + " " + args + " 2>&1";
  CliRun run;
  FILE* pipe = popen(command.c_str(), "r");
  if (pipe == nullptr) return run;
  char buffer[4096];
  while (fgets(buffer, sizeof(buffer), pipe) != nullptr) run.output += buffer;
  int status = pclose(pipe);
  run.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return run;
}

std::string Data(const std::string& name) {
  return std::string(LUBA_TEST_DATA_DIR) + "/" + name;
}

fs::path TempDir() {
  fs::path dir = fs::temp_directory_path() / "luba_cli_test";
  fs::create_directories(dir);
  return dir;
}

TEST(CliTest, ListScenarios) {
  CliRun run = Cli("list-scenarios");
  EXPECT_EQ(run.code, 0);
  EXPECT_NE(run.output.find("mc-vs-codipas"), std::string::npos);
}

TEST(CliTest, UsageErrorIsConfigError) {
  EXPECT_EQ(Cli("frobnicate").code, 2);
  EXPECT_EQ(Cli("learn --repeats 0").code, 2);
}

TEST(CliTest, UnknownKeyIsConfigErrorWithLocation) {
  fs::path cfg = TempDir() / "bad.yaml";
  std::ofstream(cfg) << "auction:\n  bidders: 2\n  bogus: 1\n";
  CliRun run = Cli("learn --config " + cfg.string());
  EXPECT_EQ(run.code, 2);
  EXPECT_NE(run.output.find("bad.yaml:3:3"), std::string::npos) << run.output;
}

TEST(CliTest, UnknownScenario) {
  EXPECT_EQ(Cli("scenario --scenario nope").code, 2);
}

TEST(CliTest, CapExceeded) {
  CliRun run = Cli("solve --kind pure --config " + Data("big_subsets.yaml"));
  EXPECT_EQ(run.code, 3) << run.output;
}

TEST(CliTest, VerifyCheckFailsOnUncertifiedClosedForm) {
  EXPECT_EQ(Cli("verify --kind two-bidder --check").code, 0);
  EXPECT_EQ(Cli("verify --kind asymmetric --check").code, 4);
  EXPECT_EQ(Cli("verify --kind asymmetric").code, 0);
}

TEST(CliTest, ResolveProfile) {
  CliRun run = Cli("resolve --config " + Data("four_bidders.yaml") +
                " --profile " + Data("profile.yaml"));
  EXPECT_EQ(run.code, 0) << run.output;
  EXPECT_NE(run.output.find("\"winning_bid\": 3"), std::string::npos)
      << run.output;
}

TEST(CliTest, ScenarioCheck) {
  fs::path out = TempDir() / "revenue";
  CliRun run = Cli("scenario --scenario revenue-z --check --out " + out.string());
  EXPECT_EQ(run.code, 0) << run.output;
  EXPECT_TRUE(fs::exists(out / "revenue_z.csv"));
  EXPECT_TRUE(fs::exists(out / "summary.json"));
}

TEST(CliTest, RevenueCsv) {
  CliRun run = Cli("revenue --z-max 0.02");
  EXPECT_EQ(run.code, 0);
  EXPECT_EQ(run.output.rfind("z,fee_revenue,expected_min_unique,total\n", 0),
            0u)
      << run.output;
}

}  // namespace
