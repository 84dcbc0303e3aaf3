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

#ifndef LUBA_GAME_H_
#define LUBA_GAME_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "luba/auction.h"

namespace luba {

inline constexpr double kSupportThreshold = 1e-12;

class MixedStrategy {
 public:
  MixedStrategy() = default;
  // Throws std::invalid_argument unless probs is a probability vector.
  explicit MixedStrategy(std::vector<double> probs);

  static MixedStrategy Uniform(int num_actions);
  static MixedStrategy Pure(int num_actions, int action);

  int size() const { return static_cast<int>(probs_.size()); }
  double operator[](int a) const { return probs_[a]; }
  const std::vector<double>& probs() const { return probs_; }
  std::vector<int> Support() const;

 private:
  std::vector<double> probs_;
};

double L1Distance(const MixedStrategy& a, const MixedStrategy& b);

// A finite game in strategic form. Profiles hold one action index per
// player.
class NormalFormGame {
 public:
  virtual ~NormalFormGame() = default;

  virtual int NumPlayers() const = 0;
  virtual int NumActions(int player) const = 0;
  virtual double Payoff(int player, std::span<const int> profile) const = 0;
  // Risk index used when averaging over opponents; 0 is risk-neutral.
  virtual double Risk(int /*player*/) const { return 0.0; }
  virtual std::string ActionName(int player, int action) const;

  // Payoffs scaled to integers for exact comparisons, when available.
  virtual std::optional<int64_t> ExactPayoff(
      int /*player*/, std::span<const int> /*profile*/) const {
    return std::nullopt;
  }

  // Number of pure profiles, saturating at INT64_MAX.
  int64_t NumProfiles() const;
};

// A game given by explicit payoff tables, one per player, each indexed by
// the flattened profile (last player fastest).
class TabularGame : public NormalFormGame {
 public:
  TabularGame(std::vector<int> num_actions,
              std::vector<std::vector<double>> payoffs,
              std::vector<double> risk = {});

  int NumPlayers() const override {
    return static_cast<int>(num_actions_.size());
  }
  int NumActions(int player) const override { return num_actions_[player]; }
  double Payoff(int player, std::span<const int> profile) const override;
  double Risk(int player) const override {
    return risk_.empty() ? 0.0 : risk_[player];
  }

 private:
  int64_t Index(std::span<const int> profile) const;

  std::vector<int> num_actions_;
  std::vector<std::vector<double>> payoffs_;
  std::vector<double> risk_;
};

enum class BudgetFilter { kNone, kExAnte };

// The LUBA stage game on an explicit per-bidder list of joint actions.
class LubaGame : public NormalFormGame {
 public:
  LubaGame(AuctionConfig config,
           std::vector<std::vector<JointAction>> action_spaces);

  // Per-item actions from EnumerateActions (capped at the resubmission
  // bound), combined across items; kExAnte keeps only joint actions whose
  // worst-case spend fits the budget. Throws CapExceededError when one
  // bidder would have more than max_actions joint actions.
  static LubaGame FromConfig(const AuctionConfig& config, ActionMode mode,
                             BudgetFilter filter = BudgetFilter::kExAnte,
                             int64_t max_actions = 1'000'000);

  // Single-item game where every bidder uses the same action list.
  static LubaGame SingleItem(const AuctionConfig& config,
                             const std::vector<ActionSet>& actions);

  const AuctionConfig& config() const { return config_; }
  const std::vector<JointAction>& Actions(int player) const {
    return action_spaces_[player];
  }
  BidProfile Profile(std::span<const int> profile) const;
  // Index of an action in a player's list, or -1.
  int IndexOf(int player, const JointAction& action) const;

  int NumPlayers() const override { return config_.num_bidders; }
  int NumActions(int player) const override {
    return static_cast<int>(action_spaces_[player].size());
  }
  double Payoff(int player, std::span<const int> profile) const override;
  std::vector<double> Payoffs(std::span<const int> profile) const;
  double Risk(int player) const override { return config_.Theta(player); }
  std::string ActionName(int player, int action) const override;
  std::optional<int64_t> ExactPayoff(
      int player, std::span<const int> profile) const override;

  // Common denominator that turns every monetary input into an integer.
  std::optional<int64_t> scale() const { return scale_; }

 private:
  AuctionConfig config_;
  std::vector<std::vector<JointAction>> action_spaces_;
  std::optional<int64_t> scale_;
};

// Smallest D in {1, 2, 4, 5, 8, 10, ..., 10^6} such that every monetary
// value of the config times D is an integer, if any.
std::optional<int64_t> ExactScale(const AuctionConfig& config);

// Decode / encode flattened profile indices (last player fastest).
std::vector<int> DecodeProfile(const NormalFormGame& game, int64_t index);
int64_t EncodeProfile(const NormalFormGame& game, std::span<const int> profile);

}  // namespace luba

#endif  // LUBA_GAME_H_
