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

#include "luba/equilibria.h"

#include <gtest/gtest.h>

#include <cmath>

#include "luba/errors.h"
#include "luba/random.h"

namespace luba {
namespace {

// Expected payoff of a two-player game by explicit double loop.
double BruteExpected(const NormalFormGame& game, int player, int action,
                     const MixedStrategy& other) {
  double total = 0.0;
  for (int k = 0; k < other.size(); ++k) {
    std::vector<int> profile = player == 0 ? std::vector<int>{action, k}
                                           : std::vector<int>{k, action};
    total += other[k] * game.Payoff(player, profile);
  }
  return total;
}

TEST(MixedStrategyTest, Validation) {
  EXPECT_THROW(MixedStrategy({0.5, 0.6}), std::invalid_argument);
  EXPECT_THROW(MixedStrategy({-0.1, 1.1}), std::invalid_argument);
  EXPECT_EQ(MixedStrategy::Pure(3, 1).Support(), std::vector<int>{1});
  EXPECT_DOUBLE_EQ(
      L1Distance(MixedStrategy::Pure(2, 0), MixedStrategy::Pure(2, 1)), 2.0);
}

TEST(GameTest, ProfileCodecRoundTrip) {
  AuctionConfig config = AuctionConfig::Symmetric(3, 1, 6, 1, 0, 10, 3);
  LubaGame game = LubaGame::FromConfig(config, ActionMode::kFullSubsets);
  for (int64_t index = 0; index < game.NumProfiles(); ++index) {
    ASSERT_EQ(EncodeProfile(game, DecodeProfile(game, index)), index);
  }
}

TEST(GameTest, ExactPayoffMatchesDouble) {
  AuctionConfig config = AuctionConfig::Symmetric(2, 1, 7.5, 0.25, 0.5, 10, 4);
  LubaGame game = LubaGame::FromConfig(config, ActionMode::kFullSubsets);
  ASSERT_TRUE(game.scale().has_value());
  for (int64_t index = 0; index < game.NumProfiles(); ++index) {
    auto profile = DecodeProfile(game, index);
    for (int j = 0; j < 2; ++j) {
      ASSERT_DOUBLE_EQ(static_cast<double>(*game.ExactPayoff(j, profile)) /
                           *game.scale(),
                       game.Payoff(j, profile));
    }
  }
}

TEST(TwoBidderTest, EntriesAndRemainder) {
  MixedStrategy x = TwoBidderEquilibrium(8, 1, 6);
  ASSERT_EQ(x.size(), 7);
  EXPECT_NEAR(x[0], 1.0 / 7, 1e-15);
  EXPECT_NEAR(x[1], 1.0 / 6, 1e-15);
  EXPECT_NEAR(x[2], 1.0 / 5, 1e-15);
  EXPECT_NEAR(x[3], 1.0 / 4, 1e-15);
  EXPECT_NEAR(x[4], 1.0 - 1.0 / 7 - 1.0 / 6 - 1.0 / 5 - 1.0 / 4, 1e-15);
  EXPECT_THROW(TwoBidderEquilibrium(1.5, 1, 6), std::invalid_argument);
}

TEST(TwoBidderTest, CertifiedAcrossGrid) {
  for (double v : {3.5, 5.0, 8.0, 12.0}) {
    for (double c : {0.5, 1.0}) {
      int b_max = static_cast<int>(std::ceil(v));
      MixedStrategy x = TwoBidderEquilibrium(v, c, b_max);
      LubaGame game = TwoBidderPrefixGame(v, c, b_max);
      auto cert = VerifyEquilibrium(game, {x, x});
      EXPECT_LE(cert.max_regret, 1e-9) << "v=" << v << " c=" << c;
      for (int a : x.Support()) {
        EXPECT_NEAR(BruteExpected(game, 0, a, x), 0.0, 1e-9);
      }
    }
  }
}

TEST(RiskTwoBidderTest, LimitAndIndifference) {
  MixedStrategy neutral = TwoBidderEquilibrium(8, 1, 6);
  MixedStrategy tiny = RiskSensitiveTwoBidderEquilibrium(8, 1, 1e-8, 6);
  for (int k = 0; k < neutral.size(); ++k) {
    EXPECT_NEAR(tiny[k], neutral[k], 1e-6);
  }
  for (double theta : {-0.3, 0.1, 0.4}) {
    MixedStrategy x = RiskSensitiveTwoBidderEquilibrium(8, 1, theta, 6);
    LubaGame game = TwoBidderPrefixGame(8, 1, 6, theta);
    auto cert = VerifyEquilibrium(game, {x, x});
    EXPECT_LE(cert.max_regret, 1e-9) << theta;
  }
}

TEST(AsymmetricTest, ClosedFormIndifferenceButNotEquilibrium) {
  StrategyPair eq = AsymmetricTwoBidderEquilibrium(8, 1);
  LubaGame game = AsymmetricTwoBidderGame(8, 1);
  auto payoffs0 = ActionPayoffs(game, 0, std::vector{eq.first, eq.second});
  for (double p : payoffs0) EXPECT_NEAR(p, payoffs0[0], 1e-12);
  auto cert = VerifyEquilibrium(game, {eq.first, eq.second});
  EXPECT_NEAR(cert.max_regret, 0.4904761904761905, 1e-9);
  EXPECT_FALSE(cert.certified);
}

TEST(TwoByTwoTest, ParticipationFormula) {
  auto neutral = TwoByTwoRiskEquilibrium(8, 0, 0);
  EXPECT_NEAR(neutral.first[0], 1.0 / 8, 1e-15);
  double t = 0.2;
  auto eq = TwoByTwoRiskEquilibrium(8, 0.0, t);
  EXPECT_NEAR(eq.first[0], std::expm1(t) / std::expm1(8 * t), 1e-15);
  TabularGame game = TwoByTwoRiskGame(8, 0.0, t);
  EXPECT_LE(VerifyEquilibrium(game, {eq.first, eq.second}).max_regret, 1e-9);
}

TEST(ThreeBidderTest, SevenOne) {
  MixedStrategy x = ThreeBidderSymmetricEquilibrium(7, 1);
  EXPECT_NEAR(x[0], 0.4, 1e-12);
  EXPECT_NEAR(x[1], 0.2, 1e-12);
  EXPECT_NEAR(x[2], std::sqrt(1.0 / 6) - 0.4, 1e-12);
  LubaGame game = ThreeBidderSymmetricGame(7, 1);
  EXPECT_LE(VerifyEquilibrium(game, {x, x, x}).max_regret, 1e-6);
}

TEST(PureTest, ProblemTwoInstanceHasNone) {
  AuctionConfig config = AuctionConfig::Symmetric(2, 1, 8, 1, 1, 6, 6);
  EXPECT_TRUE(PureEquilibria(config, ActionMode::kFullSubsets).empty());
}

TEST(PureTest, BruteForceAgreesOnSmallGames) {
  Philox4x32 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::vector<double>> payoffs(2, std::vector<double>(9));
    for (auto& p : payoffs) {
      for (double& x : p) x = std::floor(rng.Uniform() * 4);
    }
    TabularGame game({3, 3}, payoffs);
    std::vector<std::vector<int>> expected;
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) {
        bool stable = true;
        for (int d = 0; d < 3; ++d) {
          stable = stable && payoffs[0][d * 3 + b] <= payoffs[0][a * 3 + b];
          stable = stable && payoffs[1][a * 3 + d] <= payoffs[1][a * 3 + b];
        }
        if (stable) expected.push_back({a, b});
      }
    }
    EXPECT_EQ(PureEquilibria(game), expected);
  }
}

TEST(PureTest, SingleBidCharacterization) {
  AuctionConfig config = AuctionConfig::Symmetric(3, 2, 6, 1, 1, 1, 5);
  auto equilibria = SingleBidPureEquilibria(config);
  // Each item has exactly one taker; no bidder takes two with budget 1.
  EXPECT_EQ(equilibria.size(), 6u);
  for (const auto& eq : equilibria) {
    for (int i = 0; i < 2; ++i) {
      int takers = 0;
      for (int j = 0; j < 3; ++j) takers += eq[j][i];
      EXPECT_EQ(takers, 1);
    }
  }
}

TEST(CycleTest, ConstructedCycleValidates) {
  // The last entrant bids {1..n} and must still profit: v > 2n + c_r.
  for (int n : {3, 4, 5, 6}) {
    double v = 2 * n + 2;
    AuctionConfig config = AuctionConfig::Symmetric(n, 1, v, 1, 1, v, 10);
    auto cycle = ConstructImprovementCycle(n);
    CycleReport report = ValidateImprovementCycle(config, cycle);
    EXPECT_TRUE(report.valid) << n << ": " << report.reason;
    for (double g : report.gains) EXPECT_GT(g, 0.0);
  }
}

TEST(CycleTest, UnprofitableLastEntryIsRejected) {
  AuctionConfig config = AuctionConfig::Symmetric(5, 1, 10, 1, 1, 10, 10);
  CycleReport report =
      ValidateImprovementCycle(config, ConstructImprovementCycle(5));
  EXPECT_FALSE(report.valid);
}

TEST(CycleTest, BrokenCycleIsRejected) {
  AuctionConfig config = AuctionConfig::Symmetric(3, 1, 10, 1, 1, 10, 10);
  auto cycle = ConstructImprovementCycle(3);
  std::swap(cycle[0], cycle[1]);
  EXPECT_FALSE(ValidateImprovementCycle(config, cycle).valid);
}

TEST(CycleTest, SearchFindsCycleInMatchingPennies) {
  TabularGame game({2, 2}, {{1, -1, -1, 1}, {-1, 1, 1, -1}});
  auto cycle = BetterReplyCycle(game);
  ASSERT_TRUE(cycle.has_value());
  EXPECT_EQ(cycle->size(), 4u);
  TabularGame coordination({2, 2}, {{1, 0, 0, 1}, {1, 0, 0, 1}});
  EXPECT_FALSE(BetterReplyCycle(coordination).has_value());
}

TEST(GlobalOptimumTest, SumOfBestSurpluses) {
  AuctionConfig config = AuctionConfig::Symmetric(3, 2, 0, 1, 1, 100, 10);
  config.valuations = {{10, 2}, {12, 3}, {5, 4}};
  GlobalOptimum go = ComputeGlobalOptimum(config);
  EXPECT_DOUBLE_EQ(go.go_payoff, (12 - 3) + (4 - 3));
  EXPECT_EQ(go.witness.at(1, 0), ActionSet{1});
  EXPECT_EQ(go.witness.at(2, 1), ActionSet{1});
}

TEST(CapTest, TooManyProfilesThrows) {
  AuctionConfig config = AuctionConfig::Symmetric(6, 1, 30, 1, 0, 100, 12);
  LubaGame game = LubaGame::FromConfig(config, ActionMode::kFullSubsets,
                                       BudgetFilter::kNone);
  EXPECT_THROW(PureEquilibria(game), CapExceededError);
}

}  // namespace
}  // namespace luba
