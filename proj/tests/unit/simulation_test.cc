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

#include "luba/simulation.h"

#include <gtest/gtest.h>

#include <sstream>

#include "luba/errors.h"

namespace luba {
namespace {

SimulationConfig Small() {
  SimulationConfig config;
  config.auction = AuctionConfig::Symmetric(2, 1, 8, 1, 0, 6, 6);
  config.iterations = 300;
  config.seed = 4;
  return config;
}

TEST(SimulationTest, DeterministicPerSeed) {
  SimulationConfig config = Small();
  Trajectory a = RunSimulation(config);
  Trajectory b = RunSimulation(config);
  EXPECT_EQ(a.actions, b.actions);
  EXPECT_EQ(a.rmse, b.rmse);
  EXPECT_EQ(a.final_strategies, b.final_strategies);
  config.seed = 5;
  EXPECT_NE(RunSimulation(config).actions, a.actions);
}

TEST(SimulationTest, StrategiesStayOnSimplex) {
  SimulationConfig config = Small();
  config.record_stride = 10;
  config.noise_std = 0.5;
  Trajectory traj = RunSimulation(config);
  ASSERT_EQ(traj.length(), 300);
  for (const Snapshot& snap : traj.snapshots) {
    for (const auto& bidder : snap.strategies) {
      double total = 0.0;
      for (double p : bidder[0]) total += p;
      ASSERT_NEAR(total, 1.0, 1e-12);
    }
  }
  EXPECT_EQ(traj.snapshots.back().iteration, 300);
}

TEST(SimulationTest, PayoffsMatchAuctionRules) {
  SimulationConfig config = Small();
  Trajectory traj = RunSimulation(config);
  for (int t = 0; t < traj.length(); ++t) {
    std::vector<ActionSet> sets = {traj.Action(t, 0, 0), traj.Action(t, 1, 0)};
    ItemOutcome out = ResolveItem(sets);
    ASSERT_EQ(traj.winners[t][0], out.winner.value_or(-1));
    for (int j = 0; j < 2; ++j) {
      double expected = BidderItemPayoff(config.auction, j, 0, sets[j], out);
      ASSERT_DOUBLE_EQ(traj.payoffs[t][j], expected);
    }
  }
}

TEST(SimulationTest, DepletingBudgetsStayAffordable) {
  SimulationConfig config;
  config.auction = AuctionConfig::Symmetric(3, 2, 12, 1, 0.5, 15, 5);
  config.iterations = 400;
  config.budget_mode = BudgetMode::kDepleting;
  Trajectory traj = RunSimulation(config);
  std::vector<double> budget = config.auction.budgets;
  for (int t = 0; t < traj.length(); ++t) {
    BidProfile profile(3, 2);
    for (int j = 0; j < 3; ++j) {
      for (int i = 0; i < 2; ++i) profile.at(j, i) = traj.Action(t, j, i);
    }
    auto outcomes = ResolveProfile(profile);
    for (int j = 0; j < 3; ++j) {
      JointAction row = profile.Row(j);
      ASSERT_LE(Spend(config.auction, j, row, Settlement::kExAnte),
                budget[j] + 1e-9);
      budget[j] -= Spend(config.auction, j, row, Settlement::kExPost,
                         outcomes);
      ASSERT_GE(budget[j], -1e-9);
    }
  }
  for (int j = 0; j < 3; ++j) {
    EXPECT_NEAR(traj.remaining_budget[j], budget[j], 1e-9);
  }
}

TEST(SimulationTest, MonteCarloPlaysSingleBids) {
  SimulationConfig config;
  config.auction = AuctionConfig::Symmetric(4, 1, 10, 1, 0, 10, 10);
  config.algorithm = Algorithm::kMonteCarlo;
  config.action_mode = ActionMode::kSingletons;
  config.iterations = 200;
  Trajectory traj = RunSimulation(config);
  for (int t = 0; t < traj.length(); ++t) {
    for (int j = 0; j < 4; ++j) ASSERT_LE(traj.Action(t, j, 0).size(), 1);
  }
}

TEST(SimulationTest, CsvHeaderAndRows) {
  SimulationConfig config = Small();
  config.iterations = 3;
  std::ostringstream out;
  WriteTrajectoryCsv(RunSimulation(config), out);
  std::istringstream in(out.str());
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header,
            "iteration,bidder,item,action_id,probability,rmse,payoff,"
            "winner_flag");
  int rows = 0;
  for (std::string line; std::getline(in, line);) ++rows;
  EXPECT_EQ(rows, 3 * 2 * 7);  // iterations x bidders x prefix actions
}

TEST(SimulationTest, InvalidConfig) {
  SimulationConfig config = Small();
  config.iterations = 0;
  EXPECT_THROW(RunSimulation(config), ConfigError);
  EXPECT_THROW(ParseAlgorithm("sgd"), ConfigError);
  EXPECT_EQ(ParseBudgetMode(ToString(BudgetMode::kDepleting)),
            BudgetMode::kDepleting);
}

TEST(FormatDoubleTest, ShortestRoundTrip) {
  EXPECT_EQ(FormatDouble(0.1), "0.1");
  EXPECT_EQ(FormatDouble(1.0 / 3), "0.3333333333333333");
  EXPECT_EQ(FormatDouble(2.0), "2");
}

}  // namespace
}  // namespace luba
