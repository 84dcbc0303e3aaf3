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

#include "luba/game.h"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "luba/errors.h"

namespace luba {

MixedStrategy::MixedStrategy(std::vector<double> probs)
    : probs_(std::move(probs)) {
  if (probs_.empty()) {
    throw std::invalid_argument("mixed strategy needs at least one action");
  }
  double sum = 0.0;
  for (double p : probs_) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw std::invalid_argument("probabilities must be finite and >= 0");
    }
    sum += p;
  }
  double tol = 1e-12 * std::max<double>(1.0, probs_.size());
  if (std::abs(sum - 1.0) > tol) {
    throw std::invalid_argument("probabilities must sum to 1");
  }
}

MixedStrategy MixedStrategy::Uniform(int num_actions) {
  return MixedStrategy(std::vector<double>(num_actions, 1.0 / num_actions));
}

MixedStrategy MixedStrategy::Pure(int num_actions, int action) {
  std::vector<double> probs(num_actions, 0.0);
  probs.at(action) = 1.0;
  return MixedStrategy(std::move(probs));
}

std::vector<int> MixedStrategy::Support() const {
  std::vector<int> support;
  for (int a = 0; a < size(); ++a) {
    if (probs_[a] > kSupportThreshold) support.push_back(a);
  }
  return support;
}

double L1Distance(const MixedStrategy& a, const MixedStrategy& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("strategies have different lengths");
  }
  double d = 0.0;
  for (int k = 0; k < a.size(); ++k) d += std::abs(a[k] - b[k]);
  return d;
}

std::string NormalFormGame::ActionName(int /*player*/, int action) const {
  return std::to_string(action);
}

int64_t NormalFormGame::NumProfiles() const {
  int64_t total = 1;
  for (int j = 0; j < NumPlayers(); ++j) {
    int64_t a = NumActions(j);
    if (a != 0 && total > std::numeric_limits<int64_t>::max() / a) {
      return std::numeric_limits<int64_t>::max();
    }
    total *= a;
  }
  return total;
}

std::vector<int> DecodeProfile(const NormalFormGame& game, int64_t index) {
  std::vector<int> profile(game.NumPlayers());
  for (int j = game.NumPlayers() - 1; j >= 0; --j) {
    profile[j] = static_cast<int>(index % game.NumActions(j));
    index /= game.NumActions(j);
  }
  return profile;
}

int64_t EncodeProfile(const NormalFormGame& game,
                      std::span<const int> profile) {
  int64_t index = 0;
  for (int j = 0; j < game.NumPlayers(); ++j) {
    index = index * game.NumActions(j) + profile[j];
  }
  return index;
}

TabularGame::TabularGame(std::vector<int> num_actions,
                         std::vector<std::vector<double>> payoffs,
                         std::vector<double> risk)
    : num_actions_(std::move(num_actions)),
      payoffs_(std::move(payoffs)),
      risk_(std::move(risk)) {
  if (payoffs_.size() != num_actions_.size()) {
    throw std::invalid_argument("one payoff table per player required");
  }
  if (!risk_.empty() && risk_.size() != num_actions_.size()) {
    throw std::invalid_argument("one risk index per player required");
  }
  size_t total = 1;
  for (int a : num_actions_) {
    if (a < 1) throw std::invalid_argument("players need >= 1 action");
    total *= a;
  }
  for (const auto& table : payoffs_) {
    if (table.size() != total) {
      throw std::invalid_argument("payoff table has the wrong size");
    }
  }
}

int64_t TabularGame::Index(std::span<const int> profile) const {
  int64_t index = 0;
  for (size_t j = 0; j < num_actions_.size(); ++j) {
    index = index * num_actions_[j] + profile[j];
  }
  return index;
}

double TabularGame::Payoff(int player, std::span<const int> profile) const {
  return payoffs_[player][Index(profile)];
}

namespace {

bool IsMultiple(double x, int64_t scale) {
  double scaled = x * static_cast<double>(scale);
  return std::abs(scaled - std::round(scaled)) <= 1e-9 * std::max(1.0, std::abs(scaled)) &&
         std::abs(scaled) < 1e12;
}

int64_t Scaled(double x, int64_t scale) {
  return static_cast<int64_t>(std::llround(x * static_cast<double>(scale)));
}

}  // namespace

std::optional<int64_t> ExactScale(const AuctionConfig& config) {
  std::vector<double> values = {config.registration_fee};
  values.insert(values.end(), config.submission_costs.begin(),
                config.submission_costs.end());
  for (const auto& row : config.valuations) {
    values.insert(values.end(), row.begin(), row.end());
  }
  for (int64_t decade = 1; decade <= 1'000'000; decade *= 10) {
    for (int64_t factor : {1, 2, 4, 5, 8}) {
      int64_t scale = decade * factor;
      if (scale > 1'000'000) break;
      bool ok = true;
      for (double x : values) ok = ok && IsMultiple(x, scale);
      if (ok) return scale;
    }
  }
  return std::nullopt;
}

LubaGame::LubaGame(AuctionConfig config,
                   std::vector<std::vector<JointAction>> action_spaces)
    : config_(std::move(config)), action_spaces_(std::move(action_spaces)) {
  config_.ValidateShape();
  if (static_cast<int>(action_spaces_.size()) != config_.num_bidders) {
    throw std::invalid_argument("one action space per bidder required");
  }
  for (const auto& space : action_spaces_) {
    if (space.empty()) throw std::invalid_argument("empty action space");
    for (const auto& action : space) {
      if (static_cast<int>(action.size()) != config_.num_items) {
        throw std::invalid_argument("joint action needs one set per item");
      }
    }
  }
  scale_ = ExactScale(config_);
}

LubaGame LubaGame::FromConfig(const AuctionConfig& config, ActionMode mode,
                              BudgetFilter filter, int64_t max_actions) {
  config.ValidateShape();
  std::vector<std::vector<JointAction>> spaces(config.num_bidders);
  for (int j = 0; j < config.num_bidders; ++j) {
    std::vector<std::vector<ActionSet>> per_item(config.num_items);
    int64_t product = 1;
    for (int i = 0; i < config.num_items; ++i) {
      per_item[i] = filter == BudgetFilter::kExAnte
                        ? FeasibleActions(config, j, i, mode)
                        : EnumerateActions(config, j, i, mode);
      if (filter == BudgetFilter::kNone) {
        int cap = ReduceActionSpace(config, j, i).max_resubmissions;
        std::erase_if(per_item[i],
                      [cap](const ActionSet& s) { return s.size() > cap; });
      }
      product *= static_cast<int64_t>(per_item[i].size());
      if (product > max_actions) {
        throw CapExceededError("bidder " + std::to_string(j) +
                               " has more than " +
                               std::to_string(max_actions) + " joint actions");
      }
    }
    std::vector<int> digits(config.num_items, 0);
    for (int64_t k = 0; k < product; ++k) {
      JointAction action(config.num_items);
      for (int i = 0; i < config.num_items; ++i) {
        action[i] = per_item[i][digits[i]];
      }
      if (filter != BudgetFilter::kExAnte ||
          IsFeasible(config, j, action, Settlement::kExAnte)) {
        spaces[j].push_back(std::move(action));
      }
      for (int i = config.num_items - 1; i >= 0; --i) {
        if (++digits[i] < static_cast<int>(per_item[i].size())) break;
        digits[i] = 0;
      }
    }
  }
  return LubaGame(config, std::move(spaces));
}

LubaGame LubaGame::SingleItem(const AuctionConfig& config,
                              const std::vector<ActionSet>& actions) {
  if (config.num_items != 1) {
    throw std::invalid_argument("SingleItem needs a one-item config");
  }
  std::vector<JointAction> space;
  for (const ActionSet& a : actions) space.push_back(JointAction{a});
  return LubaGame(config, std::vector<std::vector<JointAction>>(
                              config.num_bidders, space));
}

BidProfile LubaGame::Profile(std::span<const int> profile) const {
  std::vector<JointAction> rows;
  rows.reserve(config_.num_bidders);
  for (int j = 0; j < config_.num_bidders; ++j) {
    rows.push_back(action_spaces_[j][profile[j]]);
  }
  return BidProfile(std::move(rows));
}

int LubaGame::IndexOf(int player, const JointAction& action) const {
  const auto& space = action_spaces_[player];
  for (size_t a = 0; a < space.size(); ++a) {
    if (space[a] == action) return static_cast<int>(a);
  }
  return -1;
}

double LubaGame::Payoff(int player, std::span<const int> profile) const {
  double total = 0.0;
  std::vector<ActionSet> column(config_.num_bidders);
  for (int i = 0; i < config_.num_items; ++i) {
    const ActionSet& own = action_spaces_[player][profile[player]][i];
    if (own.empty()) continue;
    for (int j = 0; j < config_.num_bidders; ++j) {
      column[j] = action_spaces_[j][profile[j]][i];
    }
    total += BidderItemPayoff(config_, player, i, own, ResolveItem(column));
  }
  return total;
}

std::vector<double> LubaGame::Payoffs(std::span<const int> profile) const {
  BidProfile bids = Profile(profile);
  auto outcomes = ResolveProfile(bids);
  return ComputePayoffs(bids, config_, outcomes).bidder_totals;
}

std::string LubaGame::ActionName(int player, int action) const {
  const JointAction& joint = action_spaces_[player][action];
  if (joint.size() == 1) return joint[0].ToString();
  std::string out = "[";
  for (size_t i = 0; i < joint.size(); ++i) {
    if (i) out += " ";
    out += joint[i].ToString();
  }
  return out + "]";
}

std::optional<int64_t> LubaGame::ExactPayoff(
    int player, std::span<const int> profile) const {
  if (!scale_) return std::nullopt;
  int64_t s = *scale_;
  int64_t total = 0;
  std::vector<ActionSet> column(config_.num_bidders);
  for (int i = 0; i < config_.num_items; ++i) {
    const ActionSet& own = action_spaces_[player][profile[player]][i];
    if (own.empty()) continue;
    for (int j = 0; j < config_.num_bidders; ++j) {
      column[j] = action_spaces_[j][profile[j]][i];
    }
    ItemOutcome outcome = ResolveItem(column);
    total -= own.size() * Scaled(config_.submission_costs[i], s) +
             Scaled(config_.registration_fee, s);
    if (outcome.winner && *outcome.winner == player) {
      total += Scaled(config_.Value(player, i), s) -
               static_cast<int64_t>(*outcome.winning_bid) * s;
    }
  }
  return total;
}

}  // namespace luba
