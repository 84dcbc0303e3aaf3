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

#ifndef LUBA_EQUILIBRIA_H_
#define LUBA_EQUILIBRIA_H_

// Closed-form equilibria of small LUBA instances, exhaustive pure-profile
// oracles and regret certificates.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "luba/auction.h"
#include "luba/game.h"

namespace luba {

inline constexpr int64_t kMaxOpponentTuples = 1'000'000;
inline constexpr int64_t kMaxJointProfiles = 10'000'000;

// Expected payoff of `player` choosing `action` while the others follow
// `strategies` (the player's own entry is ignored). Exact enumeration over
// opponent support tuples; certainty equivalent when the player's risk index
// is nonzero. Throws CapExceededError past kMaxOpponentTuples tuples.
double ExpectedPayoff(const NormalFormGame& game, int player, int action,
                      std::span<const MixedStrategy> strategies);

// ExpectedPayoff for every action of `player`.
std::vector<double> ActionPayoffs(const NormalFormGame& game, int player,
                                  std::span<const MixedStrategy> strategies);

// Payoff of the mixed profile itself for `player`.
double ProfilePayoff(const NormalFormGame& game, int player,
                     std::span<const MixedStrategy> strategies);

struct EquilibriumCertificate {
  std::vector<MixedStrategy> strategies;
  double max_regret = 0.0;
  std::vector<double> equilibrium_payoffs;             // per player
  std::vector<std::vector<double>> action_payoffs;     // [player][action]
  std::vector<std::vector<double>> supported_payoffs;  // [player][support]
  bool certified = false;
};

EquilibriumCertificate VerifyEquilibrium(
    const NormalFormGame& game, std::vector<MixedStrategy> strategies,
    double tol = 1e-9);

// ---------------------------------------------------------------------------
// Closed forms. Strategies over prefix actions are indexed by length: entry l
// is the probability of bidding {1, ..., l}, entry 0 is not taking part.

// Two symmetric bidders, one item, no registration fee:
// y_l = c / (v - (l+1)) for l < k, y_k = 1 - sum_{l<k} y_l, zero above k,
// with k the largest index whose partial sum stays below 1 and k <= b_max.
// Requires v > c + 1.
MixedStrategy TwoBidderEquilibrium(double v, double c, int b_max);

// Risk-sensitive version with
// y_l = e^{l theta c} (e^{theta c} - 1) / (e^{theta (v-l-1)} - 1).
// theta == 0 delegates to TwoBidderEquilibrium.
MixedStrategy RiskSensitiveTwoBidderEquilibrium(double v, double c,
                                                double theta, int b_max);

struct StrategyPair {
  MixedStrategy first;
  MixedStrategy second;
};

// Two bidders with prefix actions of length <= 2 and <= 3:
// x = (1 - c/(v-2) - c/(v-3), c/(v-2), c/(v-3)),
// y = (c/(v-1), c/(v-2), c/(v-3), remainder).
// Throws std::invalid_argument if a component leaves [0, 1].
StrategyPair AsymmetricTwoBidderEquilibrium(double v, double c);

// Two bidders choosing between not bidding and bidding 1 (win v-1, tie -1).
// Each bidder's no-bid probability is (e^{theta'} - 1)/(e^{v theta'} - 1)
// with theta' the opponent's risk index, and 1/v at theta' == 0.
// Strategies are ordered (no-bid, bid-1).
StrategyPair TwoByTwoRiskEquilibrium(double v, double theta_1,
                                     double theta_2);

// Three symmetric bidders over [{}, {1}, {2}, {1,2}]:
// x_0 = 2 sqrt(c/(5(v-2))), x_1 = sqrt(c/(5(v-2))),
// x_2 = sqrt(c/(v-1)) - x_0, x_12 = 1 - x_0 - x_1 - x_2.
MixedStrategy ThreeBidderSymmetricEquilibrium(double v, double c);

// Games the closed forms live on (no registration fee, non-binding budget).
LubaGame TwoBidderPrefixGame(double v, double c, int b_max,
                             double theta = 0.0);
LubaGame AsymmetricTwoBidderGame(double v, double c);
TabularGame TwoByTwoRiskGame(double v, double theta_1, double theta_2);
LubaGame ThreeBidderSymmetricGame(double v, double c);

// ---------------------------------------------------------------------------
// Pure profiles.

// Every pure profile with no strictly improving unilateral deviation.
// Comparisons are exact when the game provides ExactPayoff. Throws
// CapExceededError above max_profiles profiles.
std::vector<std::vector<int>> PureEquilibria(
    const NormalFormGame& game, int64_t max_profiles = kMaxJointProfiles);

std::vector<BidProfile> PureEquilibria(
    const AuctionConfig& config, ActionMode mode,
    BudgetFilter filter = BudgetFilter::kExAnte);

// Single-bid special case: 0/1 matrices b[j][i] with exactly one taker per
// item, at most budgets[j] items per bidder and v_ji > 1 + c_i + c_r on every
// taken item. Budgets are read as item counts here and may be zero.
std::vector<std::vector<std::vector<int>>> SingleBidPureEquilibria(
    const AuctionConfig& config);

// A strict better-reply cycle found by depth-first search over the
// better-reply graph, or nullopt when the graph is acyclic. The returned
// list does not repeat its first profile.
std::optional<std::vector<std::vector<int>>> BetterReplyCycle(
    const NormalFormGame& game, int64_t max_profiles = kMaxJointProfiles);

// The single-item n-bidder cycle: bidders enter one by one with growing
// prefixes, drop out in order, the last bidder retreats to {1}, the first
// re-enters with {1,2}, the last leaves and the first settles on {1}.
std::vector<BidProfile> ConstructImprovementCycle(int num_bidders);

struct CycleReport {
  bool valid = false;
  std::string reason;         // first failed check, empty when valid
  std::vector<int> movers;    // bidder changing at each step
  std::vector<double> gains;  // mover's payoff gain at each step
};

// Checks that consecutive profiles (wrapping around) differ in exactly one
// bidder and strictly improve that bidder.
CycleReport ValidateImprovementCycle(const AuctionConfig& config,
                                     std::span<const BidProfile> cycle);

// ---------------------------------------------------------------------------
// Efficiency.

struct GlobalOptimum {
  double go_payoff = 0.0;
  double inefficiency_gap = 0.0;  // against the zero-surplus mixed equilibrium
  BidProfile witness;
};

// On every item where max_j v_ji > c_i + c_r + 1 the highest-valuation
// bidder (lowest index on ties) bids {1} alone.
GlobalOptimum ComputeGlobalOptimum(const AuctionConfig& config);

// True when no other profile of the game weakly improves every bidder and
// strictly improves one.
bool IsParetoOptimal(const LubaGame& game, std::span<const int> profile);

}  // namespace luba

#endif  // LUBA_EQUILIBRIA_H_
