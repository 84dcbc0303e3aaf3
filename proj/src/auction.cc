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

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "luba/errors.h"

namespace luba {
namespace {

void Require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError(what);
}

}  // namespace

AuctionConfig AuctionConfig::Symmetric(int num_bidders, int num_items,
                                       double value, double submission_cost,
                                       double registration_fee, double budget,
                                       int bid_cap) {
  AuctionConfig config;
  config.num_bidders = num_bidders;
  config.num_items = num_items;
  config.registration_fee = registration_fee;
  config.submission_costs.assign(num_items, submission_cost);
  config.budgets.assign(num_bidders, budget);
  config.valuations.assign(num_bidders, std::vector<double>(num_items, value));
  config.bid_cap = bid_cap;
  return config;
}

void AuctionConfig::ValidateShape() const {
  Require(num_bidders >= 1, "num_bidders must be >= 1");
  Require(num_items >= 1, "num_items must be >= 1");
  Require(static_cast<int>(submission_costs.size()) == num_items,
          "submission_costs must have one entry per item");
  Require(static_cast<int>(budgets.size()) == num_bidders,
          "budgets must have one entry per bidder");
  Require(static_cast<int>(valuations.size()) == num_bidders,
          "valuations must have one row per bidder");
  for (const auto& row : valuations) {
    Require(static_cast<int>(row.size()) == num_items,
            "valuations rows must have one entry per item");
  }
  Require(risk.empty() || static_cast<int>(risk.size()) == num_bidders,
          "risk must be empty or have one entry per bidder");
  Require(bid_cap >= 1, "bid_cap must be >= 1");
}

void AuctionConfig::Validate() const {
  ValidateShape();
  Require(std::isfinite(registration_fee) && registration_fee >= 0,
          "registration_fee must be >= 0");
  for (double c : submission_costs) {
    Require(std::isfinite(c) && c >= 0, "submission_costs must be >= 0");
  }
  for (double b : budgets) {
    Require(std::isfinite(b) && b > 0, "budgets must be > 0");
  }
  for (const auto& row : valuations) {
    for (double v : row) {
      Require(std::isfinite(v) && v > 0, "valuations must be > 0");
    }
  }
  for (double theta : risk) {
    Require(std::isfinite(theta), "risk indices must be finite");
  }
}

ActionSet::ActionSet(std::initializer_list<int> bids)
    : ActionSet(std::vector<int>(bids)) {}

ActionSet::ActionSet(std::vector<int> bids) : bids_(std::move(bids)) {
  std::sort(bids_.begin(), bids_.end());
  if (std::adjacent_find(bids_.begin(), bids_.end()) != bids_.end()) {
    throw std::invalid_argument("ActionSet bids must be distinct");
  }
  if (!bids_.empty() && bids_.front() < 1) {
    throw std::invalid_argument("ActionSet bids must be >= 1");
  }
}

ActionSet ActionSet::Prefix(int length) {
  if (length < 0) throw std::invalid_argument("prefix length must be >= 0");
  ActionSet set;
  set.bids_.resize(length);
  for (int b = 0; b < length; ++b) set.bids_[b] = b + 1;
  return set;
}

bool ActionSet::Contains(int bid) const {
  return std::binary_search(bids_.begin(), bids_.end(), bid);
}

bool ActionSet::IsPrefix() const {
  return bids_.empty() || bids_.back() == size();
}

std::string ActionSet::ToString() const {
  std::string out = "{";
  for (size_t k = 0; k < bids_.size(); ++k) {
    if (k) out += ",";
    out += std::to_string(bids_[k]);
  }
  return out + "}";
}

bool CanonicalLess(const ActionSet& a, const ActionSet& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  auto x = a.bids();
  auto y = b.bids();
  return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
}

BidProfile::BidProfile(int num_bidders, int num_items)
    : num_bidders_(num_bidders),
      num_items_(num_items),
      sets_(static_cast<size_t>(num_bidders) * num_items) {}

BidProfile::BidProfile(std::vector<JointAction> rows)
    : num_bidders_(static_cast<int>(rows.size())),
      num_items_(rows.empty() ? 0 : static_cast<int>(rows.front().size())) {
  sets_.reserve(static_cast<size_t>(num_bidders_) * num_items_);
  for (auto& row : rows) {
    if (static_cast<int>(row.size()) != num_items_) {
      throw std::invalid_argument("BidProfile rows must have equal length");
    }
    for (auto& set : row) sets_.push_back(std::move(set));
  }
}

JointAction BidProfile::Row(int bidder) const {
  return JointAction(sets_.begin() + bidder * num_items_,
                     sets_.begin() + (bidder + 1) * num_items_);
}

std::vector<ActionSet> BidProfile::Item(int item) const {
  std::vector<ActionSet> column;
  column.reserve(num_bidders_);
  for (int j = 0; j < num_bidders_; ++j) column.push_back(at(j, item));
  return column;
}

std::string BidProfile::ToString() const {
  std::string out = "(";
  for (int j = 0; j < num_bidders_; ++j) {
    if (j) out += ", ";
    if (num_items_ == 1) {
      out += at(j, 0).ToString();
      continue;
    }
    out += "[";
    for (int i = 0; i < num_items_; ++i) {
      if (i) out += " ";
      out += at(j, i).ToString();
    }
    out += "]";
  }
  return out + ")";
}

ItemOutcome ResolveItem(std::span<const ActionSet> bid_sets) {
  ItemOutcome outcome;
  for (const ActionSet& set : bid_sets) {
    for (int b : set.bids()) ++outcome.histogram[b];
  }
  for (const auto& [bid, count] : outcome.histogram) {
    if (count == 1) outcome.unique_bids.push_back(bid);
  }
  if (outcome.unique_bids.empty()) return outcome;
  outcome.winning_bid = outcome.unique_bids.front();
  for (size_t j = 0; j < bid_sets.size(); ++j) {
    if (bid_sets[j].Contains(*outcome.winning_bid)) {
      outcome.winner = static_cast<int>(j);
      break;
    }
  }
  return outcome;
}

std::vector<ItemOutcome> ResolveProfile(const BidProfile& profile) {
  std::vector<ItemOutcome> outcomes;
  outcomes.reserve(profile.num_items());
  for (int i = 0; i < profile.num_items(); ++i) {
    auto column = profile.Item(i);
    outcomes.push_back(ResolveItem(column));
  }
  return outcomes;
}

double BidderItemPayoff(const AuctionConfig& config, int bidder, int item,
                        const ActionSet& bids, const ItemOutcome& outcome) {
  if (bids.empty()) return 0.0;
  double payoff = -bids.size() * config.submission_costs[item] -
                  config.registration_fee;
  if (outcome.winner && *outcome.winner == bidder) {
    payoff += config.Value(bidder, item) - *outcome.winning_bid;
  }
  return payoff;
}

namespace {

void CheckDimensions(const BidProfile& profile, const AuctionConfig& config,
                     size_t num_outcomes) {
  if (profile.num_bidders() != config.num_bidders ||
      profile.num_items() != config.num_items) {
    throw std::invalid_argument(
        "profile dimensions do not match the auction configuration");
  }
  if (num_outcomes != static_cast<size_t>(config.num_items)) {
    throw std::invalid_argument("expected one outcome per item");
  }
}

}  // namespace

PayoffReport ComputePayoffs(const BidProfile& profile,
                            const AuctionConfig& config,
                            std::span<const ItemOutcome> outcomes,
                            std::span<const double> auctioneer_values) {
  CheckDimensions(profile, config, outcomes.size());
  PayoffReport report;
  report.bidder_payoffs.assign(config.num_bidders,
                               std::vector<double>(config.num_items, 0.0));
  report.bidder_totals.assign(config.num_bidders, 0.0);
  for (int j = 0; j < config.num_bidders; ++j) {
    for (int i = 0; i < config.num_items; ++i) {
      double r = BidderItemPayoff(config, j, i, profile.at(j, i), outcomes[i]);
      report.bidder_payoffs[j][i] = r;
      report.bidder_totals[j] += r;
    }
  }
  if (!auctioneer_values.empty()) {
    report.auctioneer_payoffs =
        AuctioneerRevenue(profile, config, auctioneer_values);
    for (double r : report.auctioneer_payoffs) report.auctioneer_total += r;
  }
  return report;
}

std::vector<double> AuctioneerRevenue(
    const BidProfile& profile, const AuctionConfig& config,
    std::span<const double> auctioneer_values) {
  CheckDimensions(profile, config, auctioneer_values.size());
  std::vector<double> revenue(config.num_items, 0.0);
  for (int i = 0; i < config.num_items; ++i) {
    auto column = profile.Item(i);
    ItemOutcome outcome = ResolveItem(column);
    double r = outcome.winning_bid ? *outcome.winning_bid : 0.0;
    for (const ActionSet& set : column) {
      if (set.empty()) continue;
      r += config.registration_fee + set.size() * config.submission_costs[i];
    }
    revenue[i] = r - auctioneer_values[i];
  }
  return revenue;
}

double Spend(const AuctionConfig& config, int bidder,
             std::span<const ActionSet> row, Settlement settlement,
             std::span<const ItemOutcome> outcomes) {
  if (settlement == Settlement::kExPost && outcomes.size() != row.size()) {
    throw std::invalid_argument("ex-post spend needs one outcome per item");
  }
  double spend = 0.0;
  for (size_t i = 0; i < row.size(); ++i) {
    const ActionSet& set = row[i];
    if (set.empty()) continue;
    spend += config.registration_fee + set.size() * config.submission_costs[i];
    if (settlement == Settlement::kExAnte) {
      spend += set.Max();
    } else if (outcomes[i].winner && *outcomes[i].winner == bidder) {
      spend += *outcomes[i].winning_bid;
    }
  }
  return spend;
}

bool IsFeasible(const AuctionConfig& config, int bidder,
                std::span<const ActionSet> row, Settlement settlement,
                std::span<const ItemOutcome> outcomes) {
  return Spend(config, bidder, row, settlement, outcomes) <=
         config.budgets[bidder] + 1e-12;
}

ActionBounds ReduceActionSpace(const AuctionConfig& config, int bidder,
                               int item) {
  double v = config.Value(bidder, item);
  double c = config.submission_costs[item];
  double cr = config.registration_fee;
  ActionBounds bounds;
  if (v < c + cr) return bounds;
  double bid_limit = std::min({v - cr, config.budgets[bidder],
                               static_cast<double>(config.bid_cap)});
  bounds.max_bid = static_cast<int>(std::floor(bid_limit + 1e-12));
  if (c > 0) {
    bounds.max_resubmissions =
        static_cast<int>(std::floor((v - cr) / c + 1e-12));
  } else {
    bounds.max_resubmissions = std::numeric_limits<int>::max();
  }
  return bounds;
}

std::vector<ActionSet> EnumerateActions(int max_bid, ActionMode mode) {
  if (max_bid < 0) throw std::invalid_argument("max_bid must be >= 0");
  std::vector<ActionSet> actions;
  switch (mode) {
    case ActionMode::kPrefixSets:
      for (int l = 0; l <= max_bid; ++l) actions.push_back(ActionSet::Prefix(l));
      return actions;
    case ActionMode::kSingletons:
      actions.emplace_back();
      for (int b = 1; b <= max_bid; ++b) actions.push_back(ActionSet{b});
      return actions;
    case ActionMode::kFullSubsets:
      break;
  }
  if (max_bid > kMaxFullSubsetBid) {
    throw CapExceededError("full_subsets enumeration needs max bid <= " +
                           std::to_string(kMaxFullSubsetBid) + ", got " +
                           std::to_string(max_bid));
  }
  uint32_t count = 1u << max_bid;
  actions.reserve(count);
  for (uint32_t mask = 0; mask < count; ++mask) {
    std::vector<int> bids;
    for (int b = 0; b < max_bid; ++b) {
      if (mask & (1u << b)) bids.push_back(b + 1);
    }
    actions.emplace_back(std::move(bids));
  }
  std::stable_sort(actions.begin(), actions.end(), CanonicalLess);
  return actions;
}

std::vector<ActionSet> EnumerateActions(const AuctionConfig& config,
                                        int bidder, int item,
                                        ActionMode mode) {
  return EnumerateActions(ReduceActionSpace(config, bidder, item).max_bid,
                          mode);
}

std::vector<ActionSet> FeasibleActions(const AuctionConfig& config,
                                       int bidder, int item,
                                       ActionMode mode) {
  ActionBounds bounds = ReduceActionSpace(config, bidder, item);
  std::vector<ActionSet> actions;
  for (ActionSet& set : EnumerateActions(bounds.max_bid, mode)) {
    if (set.size() > bounds.max_resubmissions) continue;
    if (!set.empty()) {
      double spend = config.registration_fee +
                     set.size() * config.submission_costs[item] + set.Max();
      if (spend > config.budgets[bidder] + 1e-12) continue;
    }
    actions.push_back(std::move(set));
  }
  return actions;
}

double RiskPayoff(std::span<const double> values,
                  std::span<const double> probabilities, double theta) {
  if (values.size() != probabilities.size() || values.empty()) {
    throw std::invalid_argument("values and probabilities must match");
  }
  if (theta == 0.0) {
    double mean = 0.0;
    for (size_t k = 0; k < values.size(); ++k) {
      mean += probabilities[k] * values[k];
    }
    return mean;
  }
  double shift = -std::numeric_limits<double>::infinity();
  double spread = 0.0;
  for (size_t k = 0; k < values.size(); ++k) {
    if (probabilities[k] > 0) {
      shift = std::max(shift, theta * values[k]);
      spread = std::max(spread, std::abs(theta * values[k]));
    }
  }
  if (spread < 1.0) {
    // Small exponents: expm1 / log1p keep the digits lost to cancellation.
    double sum = 0.0;
    for (size_t k = 0; k < values.size(); ++k) {
      if (probabilities[k] > 0) {
        sum += probabilities[k] * std::expm1(theta * values[k]);
      }
    }
    return std::log1p(sum) / theta;
  }
  double sum = 0.0;
  for (size_t k = 0; k < values.size(); ++k) {
    if (probabilities[k] > 0) {
      sum += probabilities[k] * std::exp(theta * values[k] - shift);
    }
  }
  return (shift + std::log(sum)) / theta;
}

std::string ToString(ActionMode mode) {
  switch (mode) {
    case ActionMode::kFullSubsets:
      return "full_subsets";
    case ActionMode::kPrefixSets:
      return "prefix_sets";
    case ActionMode::kSingletons:
      return "singletons";
  }
  return "unknown";
}

ActionMode ParseActionMode(const std::string& name) {
  if (name == "full_subsets") return ActionMode::kFullSubsets;
  if (name == "prefix_sets") return ActionMode::kPrefixSets;
  if (name == "singletons") return ActionMode::kSingletons;
  throw ConfigError("unknown action mode '" + name +
                    "' (expected full_subsets, prefix_sets or singletons)");
}

}  // namespace luba
