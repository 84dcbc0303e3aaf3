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

#ifndef LUBA_AUCTION_H_
#define LUBA_AUCTION_H_

// Mechanics of the multi-item lowest-unique-bid auction with resubmission.
//
// Bids are positive integers (cents). A bidder places a set of distinct bids
// on each item; every bid costs the item's submission fee and every
// participation costs the registration fee. On each item the lowest bid
// placed by exactly one bidder wins and the winner pays it. If no bid is
// unique the item stays with the auctioneer.

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace luba {

struct AuctionConfig {
  int num_bidders = 1;
  int num_items = 1;
  double registration_fee = 0.0;
  std::vector<double> submission_costs;          // c_i, one per item
  std::vector<double> budgets;                   // one per bidder
  std::vector<std::vector<double>> valuations;   // [bidder][item]
  int bid_cap = 1;
  std::vector<double> risk;                      // theta_j; 0 is risk-neutral

  // Same valuation, fee and budget for every bidder and item.
  static AuctionConfig Symmetric(int num_bidders, int num_items, double value,
                                 double submission_cost,
                                 double registration_fee, double budget,
                                 int bid_cap);

  double Value(int bidder, int item) const { return valuations[bidder][item]; }
  double Theta(int bidder) const {
    return risk.empty() ? 0.0 : risk[bidder];
  }

  // Throws ConfigError naming the violated invariant.
  void Validate() const;
  // Dimension checks only; used by operations that accept zero budgets.
  void ValidateShape() const;

  bool operator==(const AuctionConfig&) const = default;
};

// The set of bids one bidder places on one item. Empty means the bidder
// does not take part in that item.
class ActionSet {
 public:
  ActionSet() = default;
  ActionSet(std::initializer_list<int> bids);
  explicit ActionSet(std::vector<int> bids);

  // {1, 2, ..., length}; Prefix(0) is the empty set.
  static ActionSet Prefix(int length);

  std::span<const int> bids() const { return bids_; }
  int size() const { return static_cast<int>(bids_.size()); }
  bool empty() const { return bids_.empty(); }
  bool Contains(int bid) const;
  int Min() const { return bids_.front(); }
  int Max() const { return bids_.back(); }
  // True iff the set is {1, ..., size()}.
  bool IsPrefix() const;

  std::string ToString() const;

  bool operator==(const ActionSet&) const = default;

 private:
  std::vector<int> bids_;  // strictly increasing, all >= 1
};

// Canonical action order: by cardinality, then lexicographic.
bool CanonicalLess(const ActionSet& a, const ActionSet& b);

// One ActionSet per item for a single bidder.
using JointAction = std::vector<ActionSet>;

class BidProfile {
 public:
  BidProfile() = default;
  BidProfile(int num_bidders, int num_items);
  // rows[j][i] is bidder j's set on item i.
  explicit BidProfile(std::vector<JointAction> rows);

  int num_bidders() const { return num_bidders_; }
  int num_items() const { return num_items_; }

  const ActionSet& at(int bidder, int item) const {
    return sets_[bidder * num_items_ + item];
  }
  ActionSet& at(int bidder, int item) {
    return sets_[bidder * num_items_ + item];
  }
  JointAction Row(int bidder) const;
  std::vector<ActionSet> Item(int item) const;

  std::string ToString() const;

  bool operator==(const BidProfile&) const = default;

 private:
  int num_bidders_ = 0;
  int num_items_ = 0;
  std::vector<ActionSet> sets_;
};

struct ItemOutcome {
  std::map<int, int> histogram;     // bid -> number of bidders placing it
  std::vector<int> unique_bids;     // ascending
  std::optional<int> winning_bid;
  std::optional<int> winner;

  bool operator==(const ItemOutcome&) const = default;
};

struct PayoffReport {
  std::vector<std::vector<double>> bidder_payoffs;  // [bidder][item]
  std::vector<double> bidder_totals;
  std::vector<double> auctioneer_payoffs;           // per item
  double auctioneer_total = 0.0;
};

// Winner determination for one item. bid_sets holds one set per bidder.
ItemOutcome ResolveItem(std::span<const ActionSet> bid_sets);

std::vector<ItemOutcome> ResolveProfile(const BidProfile& profile);

// Payoff of one bidder on one item given the resolved outcome.
double BidderItemPayoff(const AuctionConfig& config, int bidder, int item,
                        const ActionSet& bids, const ItemOutcome& outcome);

// Per-bidder payoffs and, when auctioneer_values is given, the auctioneer's
// per-item payoffs. Throws std::invalid_argument on dimension mismatch.
PayoffReport ComputePayoffs(const BidProfile& profile,
                            const AuctionConfig& config,
                            std::span<const ItemOutcome> outcomes,
                            std::span<const double> auctioneer_values = {});

// r_{a,i} = sum_j c_r 1{B_ji != {}} + inf B_i* + sum_j |B_ji| c_i - v_{a,i},
// with inf of the empty set taken as 0.
std::vector<double> AuctioneerRevenue(const BidProfile& profile,
                                      const AuctionConfig& config,
                                      std::span<const double> auctioneer_values);

enum class Settlement { kExAnte, kExPost };

// Total spend of bidder j for one joint action. kExPost charges the winning
// bid on items the bidder actually wins (outcomes required); kExAnte charges
// max(B_ji) on every item it takes part in.
double Spend(const AuctionConfig& config, int bidder,
             std::span<const ActionSet> row, Settlement settlement,
             std::span<const ItemOutcome> outcomes = {});

bool IsFeasible(const AuctionConfig& config, int bidder,
                std::span<const ActionSet> row, Settlement settlement,
                std::span<const ItemOutcome> outcomes = {});

struct ActionBounds {
  int max_bid = 0;            // 0 means only the empty set is undominated
  int max_resubmissions = 0;
};

// Dominance reduction: bids above min(v - c_r, budget) and more than
// (v - c_r)/c bids are dominated by not taking part.
ActionBounds ReduceActionSpace(const AuctionConfig& config, int bidder,
                               int item);

enum class ActionMode { kFullSubsets, kPrefixSets, kSingletons };

inline constexpr int kMaxFullSubsetBid = 20;

// All subsets of {1..B} (kFullSubsets, B <= kMaxFullSubsetBid), the prefix
// chain {}, {1}, {1,2}, ... (kPrefixSets) or {} and each single bid
// (kSingletons), where B is the reduced max bid. Canonical order.
std::vector<ActionSet> EnumerateActions(const AuctionConfig& config,
                                        int bidder, int item, ActionMode mode);

// Same as EnumerateActions with an explicit max bid.
std::vector<ActionSet> EnumerateActions(int max_bid, ActionMode mode);

// EnumerateActions restricted to sets with at most max_resubmissions bids
// that are ex-ante affordable on their own.
std::vector<ActionSet> FeasibleActions(const AuctionConfig& config,
                                       int bidder, int item, ActionMode mode);

// Certainty equivalent (1/theta) ln sum_k p_k exp(theta r_k); the plain mean
// when theta == 0. Evaluated with a max shift.
double RiskPayoff(std::span<const double> values,
                  std::span<const double> probabilities, double theta);

std::string ToString(ActionMode mode);
ActionMode ParseActionMode(const std::string& name);

}  // namespace luba

#endif  // LUBA_AUCTION_H_
