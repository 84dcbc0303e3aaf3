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

#include "luba/auction.h"

#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <optional>

#include "luba/errors.h"

namespace luba {
namespace {

// Winner from the definition: count holders of every bid, take the lowest
// bid held by exactly one bidder.
std::pair<std::optional<int>, std::optional<int>> OracleWinner(
    const std::vector<ActionSet>& sets) {
  for (int b = 1; b <= 64; ++b) {
    int holders = 0;
    int who = -1;
    for (size_t j = 0; j < sets.size(); ++j) {
      if (sets[j].Contains(b)) {
        ++holders;
        who = static_cast<int>(j);
      }
    }
    if (holders == 1) return {b, who};
  }
  return {std::nullopt, std::nullopt};
}

TEST(ActionSetTest, SortsAndRejectsDuplicates) {
  ActionSet s{3, 1, 2};
  EXPECT_EQ(std::vector<int>(s.bids().begin(), s.bids().end()),
            (std::vector<int>{1, 2, 3}));
  EXPECT_TRUE(s.IsPrefix());
  EXPECT_EQ(s.ToString(), "{1,2,3}");
  EXPECT_THROW((ActionSet{1, 1}), std::invalid_argument);
  EXPECT_THROW((ActionSet{0}), std::invalid_argument);
  EXPECT_FALSE((ActionSet{1, 3}).IsPrefix());
  EXPECT_EQ(ActionSet::Prefix(0), ActionSet{});
}

TEST(ResolveItemTest, TableOfMultiplicities) {
  // Multiplicities {1:2, 3:1, 4:3, 5:2, 6:1, 8:1, 9:3} spread over bidders.
  std::vector<ActionSet> sets = {ActionSet{1, 4, 5, 9}, ActionSet{1, 4, 9},
                                 ActionSet{3, 4, 5, 9}, ActionSet{6, 8}};
  ItemOutcome out = ResolveItem(sets);
  EXPECT_EQ(out.winning_bid, 3);
  EXPECT_EQ(out.winner, 2);
  EXPECT_EQ(out.unique_bids, (std::vector<int>{3, 6, 8}));
  EXPECT_EQ(out.histogram.at(4), 3);
}

TEST(ResolveItemTest, NoUniqueBidMeansNoWinner) {
  std::vector<ActionSet> sets = {ActionSet{1, 2}, ActionSet{1, 2}, ActionSet{}};
  ItemOutcome out = ResolveItem(sets);
  EXPECT_FALSE(out.winning_bid.has_value());
  EXPECT_FALSE(out.winner.has_value());
}

TEST(ResolveItemTest, ExhaustiveAgainstOracle) {
  // Three bidders, every subset of {1..4}.
  auto all = EnumerateActions(4, ActionMode::kFullSubsets);
  for (const auto& a : all) {
    for (const auto& b : all) {
      for (const auto& c : all) {
        std::vector<ActionSet> sets = {a, b, c};
        auto [bid, who] = OracleWinner(sets);
        ItemOutcome out = ResolveItem(sets);
        ASSERT_EQ(out.winning_bid, bid);
        ASSERT_EQ(out.winner, who);
      }
    }
  }
}

TEST(PayoffTest, WinnerLoserAndAbsent) {
  AuctionConfig config = AuctionConfig::Symmetric(3, 1, 10, 1, 0.5, 20, 10);
  BidProfile profile(3, 1);
  profile.at(0, 0) = ActionSet{1, 2};
  profile.at(1, 0) = ActionSet{1, 3};
  auto outcomes = ResolveProfile(profile);
  auto report = ComputePayoffs(profile, config, outcomes);
  // Unique bids {2, 3}: bidder 0 wins at 2.
  EXPECT_DOUBLE_EQ(report.bidder_payoffs[0][0], 10 - 2 * 1 - 2 - 0.5);
  EXPECT_DOUBLE_EQ(report.bidder_payoffs[1][0], -2 * 1 - 0.5);
  EXPECT_DOUBLE_EQ(report.bidder_payoffs[2][0], 0.0);
  std::vector<double> va = {4.0};
  auto with_seller = ComputePayoffs(profile, config, outcomes, va);
  EXPECT_DOUBLE_EQ(with_seller.auctioneer_payoffs[0], 2 * 0.5 + 2 + 4 - 4);
}

TEST(PayoffTest, ZeroSumWhenSellerValueEqualsItemValue) {
  AuctionConfig config = AuctionConfig::Symmetric(3, 1, 7, 1, 1, 20, 6);
  auto all = EnumerateActions(3, ActionMode::kFullSubsets);
  std::vector<double> va = {7.0};
  for (const auto& a : all) {
    for (const auto& b : all) {
      BidProfile profile(std::vector<JointAction>{{a}, {b}, {ActionSet{2}}});
      auto outcomes = ResolveProfile(profile);
      auto report = ComputePayoffs(profile, config, outcomes, va);
      double total = report.auctioneer_total;
      for (double t : report.bidder_totals) total += t;
      // The winner's value transfer cancels with the seller's loss.
      ASSERT_NEAR(total, outcomes[0].winner ? 0.0 : -7.0, 1e-12);
    }
  }
}

TEST(PayoffTest, DimensionMismatchThrows) {
  AuctionConfig config = AuctionConfig::Symmetric(2, 1, 8, 1, 0, 6, 6);
  BidProfile profile(3, 1);
  auto outcomes = ResolveProfile(profile);
  EXPECT_THROW(ComputePayoffs(profile, config, outcomes),
               std::invalid_argument);
}

TEST(FeasibilityTest, ExAnteChargesMaxBidExPostTheWin) {
  AuctionConfig config = AuctionConfig::Symmetric(2, 2, 10, 1, 1, 9, 10);
  std::vector<ActionSet> row = {ActionSet{1, 4}, ActionSet{}};
  EXPECT_DOUBLE_EQ(Spend(config, 0, row, Settlement::kExAnte), 1 + 2 + 4);
  BidProfile profile(std::vector<JointAction>{row, {ActionSet{1}, {}}});
  auto outcomes = ResolveProfile(profile);
  EXPECT_DOUBLE_EQ(Spend(config, 0, row, Settlement::kExPost, outcomes),
                   1 + 2 + 4);
  BidProfile lose(std::vector<JointAction>{row, {ActionSet{1, 4}, {}}});
  auto lose_out = ResolveProfile(lose);
  EXPECT_DOUBLE_EQ(Spend(config, 0, row, Settlement::kExPost, lose_out),
                   1 + 2);
  config.budgets = {6.5, 6.5};
  EXPECT_FALSE(IsFeasible(config, 0, row, Settlement::kExAnte));
}

TEST(ReduceTest, DominanceBounds) {
  AuctionConfig config = AuctionConfig::Symmetric(2, 1, 8, 1, 0, 6, 6);
  ActionBounds bounds = ReduceActionSpace(config, 0, 0);
  EXPECT_EQ(bounds.max_bid, 6);
  EXPECT_EQ(bounds.max_resubmissions, 8);
  config.registration_fee = 7.5;
  EXPECT_EQ(ReduceActionSpace(config, 0, 0).max_bid, 0);
}

TEST(EnumerateTest, Counts) {
  EXPECT_EQ(EnumerateActions(4, ActionMode::kFullSubsets).size(), 16u);
  EXPECT_EQ(EnumerateActions(4, ActionMode::kPrefixSets).size(), 5u);
  EXPECT_EQ(EnumerateActions(4, ActionMode::kSingletons).size(), 5u);
  EXPECT_THROW(EnumerateActions(kMaxFullSubsetBid + 1,
                                ActionMode::kFullSubsets),
               CapExceededError);
}

TEST(EnumerateTest, ProblemTwoFeasibleSpace) {
  AuctionConfig config = AuctionConfig::Symmetric(2, 1, 8, 1, 1, 6, 6);
  auto actions = FeasibleActions(config, 0, 0, ActionMode::kFullSubsets);
  std::vector<std::string> names;
  for (const auto& a : actions) names.push_back(a.ToString());
  EXPECT_EQ(names, (std::vector<std::string>{"{}", "{1}", "{2}", "{3}",
                                             "{4}", "{1,2}", "{1,3}",
                                             "{2,3}"}));
}

TEST(RiskPayoffTest, LimitsAndShift) {
  std::vector<double> values = {1.0, -2.0, 5.0};
  std::vector<double> probs = {0.2, 0.5, 0.3};
  double mean = 0.2 - 1.0 + 1.5;
  EXPECT_NEAR(RiskPayoff(values, probs, 0.0), mean, 1e-15);
  EXPECT_NEAR(RiskPayoff(values, probs, 1e-9), mean, 1e-8);
  EXPECT_GT(RiskPayoff(values, probs, 0.5), mean);
  EXPECT_LT(RiskPayoff(values, probs, -0.5), mean);
  std::vector<double> big = {800.0, 0.0};
  std::vector<double> half = {0.5, 0.5};
  EXPECT_NEAR(RiskPayoff(big, half, 1.0), 800.0 + std::log(0.5), 1e-9);
}

TEST(ConfigTest, ValidateNamesInvariant) {
  AuctionConfig config = AuctionConfig::Symmetric(2, 1, 8, 1, 0, 6, 6);
  config.budgets[1] = -1;
  try {
    config.Validate();
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("budget"), std::string::npos);
  }
  EXPECT_THROW(ParseActionMode("subsets"), ConfigError);
}

}  // namespace
}  // namespace luba
