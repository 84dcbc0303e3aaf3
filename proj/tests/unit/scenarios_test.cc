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

#include "luba/harness/scenarios.h"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "luba/errors.h"

namespace luba {
namespace {

namespace fs = std::filesystem;

std::string Slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

ExperimentSpec Quick(const std::string& name) {
  ExperimentSpec spec = ScenarioSpec(name);
  spec.repeats = 2;
  spec.seeds.clear();
  if (spec.simulation.iterations > 300) spec.simulation.iterations = 300;
  spec.simulation.snapshot_iterations.clear();
  spec.simulation.record_stride = 50;
  return spec;
}

TEST(HelpersTest, PercentileInterpolates) {
  std::vector<double> v = {4, 1, 3, 2};
  EXPECT_DOUBLE_EQ(Percentile(v, 0), 1.0);
  EXPECT_DOUBLE_EQ(Percentile(v, 100), 4.0);
  EXPECT_DOUBLE_EQ(Median(v), 2.5);
  EXPECT_DOUBLE_EQ(Percentile(v, 25), 1.75);
}

TEST(HelpersTest, FirstSustainedBelow) {
  std::vector<double> s = {5, 0.1, 5, 0.1, 0.1};
  EXPECT_EQ(FirstSustainedBelow(s, 1.0), 4);
  std::vector<double> never = {0.1, 5};
  EXPECT_EQ(FirstSustainedBelow(never, 1.0), 0);
}

TEST(HelpersTest, TotalVariation) {
  std::vector<double> p = {0.5, 0.5, 0.0};
  std::vector<double> q = {0.0, 0.5, 0.5};
  EXPECT_DOUBLE_EQ(TotalVariation(p, q), 0.5);
}

TEST(HelpersTest, ParallelMapKeepsOrderAndPropagates) {
  auto out = ParallelMap<int>(50, [](int k) { return k * k; });
  for (int k = 0; k < 50; ++k) EXPECT_EQ(out[k], k * k);
  EXPECT_THROW(ParallelMap<int>(5,
                                [](int k) -> int {
                                  if (k == 3) throw std::runtime_error("x");
                                  return k;
                                }),
               std::runtime_error);
}

TEST(ScenarioTest, RegistryIsComplete) {
  std::vector<std::string> names;
  for (const auto& info : ScenarioRegistry()) names.push_back(info.name);
  EXPECT_EQ(names, (std::vector<std::string>{
                       "two-bidder-prop4", "asym-two-bidder",
                       "three-bidder-pure", "four-bidder-two-item",
                       "param-impact", "risk-sweep", "mc-vs-codipas",
                       "revenue-z"}));
  EXPECT_THROW(ScenarioSpec("nope"), ConfigError);
}

TEST(ScenarioTest, EveryScenarioRunsQuickly) {
  for (const auto& info : ScenarioRegistry()) {
    ScenarioResult result = RunScenario(Quick(info.name), false);
    EXPECT_EQ(result.summary["schema_version"], kSummarySchemaVersion);
    EXPECT_EQ(result.summary["scenario"], info.name);
    EXPECT_TRUE(result.files.empty());
    EXPECT_TRUE(result.summary["metadata"].contains("timestamp"));
  }
}

TEST(ScenarioTest, BundleIsByteIdenticalOnRerun) {
  fs::path base = fs::temp_directory_path() / "luba_scenario_test";
  fs::remove_all(base);
  ExperimentSpec spec = Quick("two-bidder-prop4");
  spec.repeats = 1;
  std::vector<std::vector<std::string>> bundles;
  for (const char* run : {"a", "b"}) {
    spec.output = (base / run).string();
    ScenarioResult result = RunScenario(spec);
    std::vector<std::string> contents;
    for (const auto& file : result.files) {
      if (fs::path(file).filename() == "summary.json") continue;
      contents.push_back(Slurp(file));
    }
    auto summary = result.summary;
    summary.erase("metadata");
    summary["spec"]["run"].erase("output");
    contents.push_back(summary.dump());
    bundles.push_back(contents);
  }
  EXPECT_EQ(bundles[0], bundles[1]);
  fs::remove_all(base);
}

TEST(ScenarioTest, SummaryReportsAnalyticDistance) {
  ScenarioResult result = RunScenario(Quick("two-bidder-prop4"), false);
  EXPECT_TRUE(result.summary["results"].contains("median_l1"));
  EXPECT_EQ(result.summary["results"]["analytic_equilibrium"].size(), 7u);
  ScenarioResult three = RunScenario(Quick("three-bidder-pure"), false);
  EXPECT_TRUE(
      three.summary["results"].contains("learned_mass_on_1_empty_empty"));
  EXPECT_TRUE(three.metric.passed);
}

TEST(ScenarioTest, UnwritableOutputIsConfigError) {
  ExperimentSpec spec = Quick("revenue-z");
  spec.output = "/proc/luba/not/here";
  EXPECT_THROW(RunScenario(spec), ConfigError);
}

TEST(ScenarioTest, PlainLearningRun) {
  ExperimentSpec spec;
  spec.simulation.iterations = 100;
  spec.repeats = 2;
  ScenarioResult result = RunLearning(spec, false);
  EXPECT_EQ(result.summary["results"]["per_seed"].size(), 2u);
}

}  // namespace
}  // namespace luba
