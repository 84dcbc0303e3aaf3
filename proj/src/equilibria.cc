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

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "luba/errors.h"

namespace luba {
namespace {

// Visits every tuple of support actions for the players in `players`,
// passing the joint probability. Other entries of `profile` stay fixed.
template <typename Visit>
void ForEachSupportTuple(const NormalFormGame& game,
                         std::span<const MixedStrategy> strategies,
                         const std::vector<int>& players,
                         std::vector<int>& profile, Visit&& visit) {
  std::vector<std::vector<int>> supports;
  int64_t tuples = 1;
  for (int j : players) {
    if (strategies[j].size() != game.NumActions(j)) {
      throw std::invalid_argument("strategy length does not match the game");
    }
    supports.push_back(strategies[j].Support());
    tuples *= static_cast<int64_t>(supports.back().size());
    if (tuples > kMaxOpponentTuples) {
      throw CapExceededError("more than " +
                             std::to_string(kMaxOpponentTuples) +
                             " support tuples to enumerate");
    }
  }
  std::vector<size_t> cursor(players.size(), 0);
  for (int64_t t = 0; t < tuples; ++t) {
    double prob = 1.0;
    for (size_t k = 0; k < players.size(); ++k) {
      int j = players[k];
      profile[j] = supports[k][cursor[k]];
      prob *= strategies[j][profile[j]];
    }
    visit(prob);
    for (size_t k = players.size(); k-- > 0;) {
      if (++cursor[k] < supports[k].size()) break;
      cursor[k] = 0;
    }
  }
}

void CheckStrategies(const NormalFormGame& game,
                     std::span<const MixedStrategy> strategies) {
  if (static_cast<int>(strategies.size()) != game.NumPlayers()) {
    throw std::invalid_argument("one strategy per player required");
  }
}

double Aggregate(const std::vector<double>& values,
                 const std::vector<double>& probs, double theta) {
  return RiskPayoff(values, probs, theta);
}

}  // namespace

double ExpectedPayoff(const NormalFormGame& game, int player, int action,
                      std::span<const MixedStrategy> strategies) {
  CheckStrategies(game, strategies);
  std::vector<int> others;
  for (int j = 0; j < game.NumPlayers(); ++j) {
    if (j != player) others.push_back(j);
  }
  std::vector<int> profile(game.NumPlayers(), 0);
  profile[player] = action;
  std::vector<double> values;
  std::vector<double> probs;
  ForEachSupportTuple(game, strategies, others, profile, [&](double p) {
    values.push_back(game.Payoff(player, profile));
    probs.push_back(p);
  });
  return Aggregate(values, probs, game.Risk(player));
}

std::vector<double> ActionPayoffs(const NormalFormGame& game, int player,
                                  std::span<const MixedStrategy> strategies) {
  std::vector<double> payoffs(game.NumActions(player));
  for (int a = 0; a < game.NumActions(player); ++a) {
    payoffs[a] = ExpectedPayoff(game, player, a, strategies);
  }
  return payoffs;
}

double ProfilePayoff(const NormalFormGame& game, int player,
                     std::span<const MixedStrategy> strategies) {
  CheckStrategies(game, strategies);
  std::vector<int> everyone(game.NumPlayers());
  for (int j = 0; j < game.NumPlayers(); ++j) everyone[j] = j;
  std::vector<int> profile(game.NumPlayers(), 0);
  std::vector<double> values;
  std::vector<double> probs;
  ForEachSupportTuple(game, strategies, everyone, profile, [&](double p) {
    values.push_back(game.Payoff(player, profile));
    probs.push_back(p);
  });
  return Aggregate(values, probs, game.Risk(player));
}

EquilibriumCertificate VerifyEquilibrium(const NormalFormGame& game,
                                         std::vector<MixedStrategy> strategies,
                                         double tol) {
  CheckStrategies(game, strategies);
  EquilibriumCertificate cert;
  cert.strategies = std::move(strategies);
  for (int j = 0; j < game.NumPlayers(); ++j) {
    auto payoffs = ActionPayoffs(game, j, cert.strategies);
    double value = ProfilePayoff(game, j, cert.strategies);
    std::vector<double> supported;
    for (int a : cert.strategies[j].Support()) supported.push_back(payoffs[a]);
    double best = *std::max_element(payoffs.begin(), payoffs.end());
    cert.max_regret = std::max(cert.max_regret, best - value);
    cert.equilibrium_payoffs.push_back(value);
    cert.action_payoffs.push_back(std::move(payoffs));
    cert.supported_payoffs.push_back(std::move(supported));
  }
  cert.certified = cert.max_regret <= tol;
  return cert;
}

namespace {

void RequireProfitable(double v, double c) {
  if (!(v > c + 1)) {
    throw std::invalid_argument("requires v > c + 1 (participation must pay)");
  }
  if (!(c > 0)) throw std::invalid_argument("requires c > 0");
}

// Fills y_0..y_{k-1} from `term` and closes with the remainder at k.
template <typename Term>
MixedStrategy PrefixChain(double v, int b_max, Term&& term) {
  if (b_max < 0) throw std::invalid_argument("b_max must be >= 0");
  std::vector<double> y(b_max + 1, 0.0);
  double partial = 0.0;
  int k = 0;
  for (int l = 0; l < b_max; ++l) {
    if (v - (l + 1) <= 0) break;
    double t = term(l);
    if (!(t > 0) || partial + t >= 1.0) break;
    y[l] = t;
    partial += t;
    k = l + 1;
  }
  y[k] = 1.0 - partial;
  return MixedStrategy(std::move(y));
}

}  // namespace

MixedStrategy TwoBidderEquilibrium(double v, double c, int b_max) {
  RequireProfitable(v, c);
  return PrefixChain(v, b_max, [&](int l) { return c / (v - (l + 1)); });
}

MixedStrategy RiskSensitiveTwoBidderEquilibrium(double v, double c,
                                                double theta, int b_max) {
  if (theta == 0.0) return TwoBidderEquilibrium(v, c, b_max);
  RequireProfitable(v, c);
  if (!std::isfinite(theta)) throw std::invalid_argument("theta not finite");
  return PrefixChain(v, b_max, [&](int l) {
    return std::exp(l * theta * c) * std::expm1(theta * c) /
           std::expm1(theta * (v - l - 1));
  });
}

StrategyPair AsymmetricTwoBidderEquilibrium(double v, double c) {
  if (!(v > 3)) throw std::invalid_argument("requires v > 3");
  double a = c / (v - 1), b = c / (v - 2), d = c / (v - 3);
  std::vector<double> x = {1.0 - b - d, b, d};
  std::vector<double> y = {a, b, d, 1.0 - a - b - d};
  for (double p : x) {
    if (p < 0 || p > 1) throw std::invalid_argument("x leaves [0, 1]");
  }
  for (double p : y) {
    if (p < 0 || p > 1) throw std::invalid_argument("y leaves [0, 1]");
  }
  return {MixedStrategy(std::move(x)), MixedStrategy(std::move(y))};
}

namespace {

double NoBidProbability(double v, double theta) {
  if (theta == 0.0) return 1.0 / v;
  return std::expm1(theta) / std::expm1(v * theta);
}

}  // namespace

StrategyPair TwoByTwoRiskEquilibrium(double v, double theta_1,
                                     double theta_2) {
  if (!(v > 1)) throw std::invalid_argument("requires v > 1");
  double p1 = NoBidProbability(v, theta_2);
  double p2 = NoBidProbability(v, theta_1);
  return {MixedStrategy({p1, 1.0 - p1}), MixedStrategy({p2, 1.0 - p2})};
}

MixedStrategy ThreeBidderSymmetricEquilibrium(double v, double c) {
  if (!(v > 2) || !(c > 0)) {
    throw std::invalid_argument("requires v > 2 and c > 0");
  }
  double x1 = std::sqrt(c / (5 * (v - 2)));
  double x0 = 2 * x1;
  double x2 = std::sqrt(c / (v - 1)) - x0;
  double x12 = 1.0 - x0 - x1 - x2;
  if (!(x2 > 0) || !(x12 > 0)) {
    throw std::invalid_argument(
        "three-bidder closed form has a nonpositive component");
  }
  return MixedStrategy({x0, x1, x2, x12});
}

namespace {

AuctionConfig ClosedFormConfig(int n, double v, double c, int b_max) {
  AuctionConfig config = AuctionConfig::Symmetric(
      n, 1, v, c, 0.0, std::max<double>(v, b_max) + 1, std::max(1, b_max));
  return config;
}

std::vector<ActionSet> Prefixes(int b_max) {
  return EnumerateActions(b_max, ActionMode::kPrefixSets);
}

}  // namespace

LubaGame TwoBidderPrefixGame(double v, double c, int b_max, double theta) {
  AuctionConfig config = ClosedFormConfig(2, v, c, b_max);
  if (theta != 0.0) config.risk = {theta, theta};
  return LubaGame::SingleItem(config, Prefixes(b_max));
}

LubaGame AsymmetricTwoBidderGame(double v, double c) {
  AuctionConfig config = ClosedFormConfig(2, v, c, 3);
  std::vector<std::vector<JointAction>> spaces(2);
  for (const ActionSet& a : Prefixes(2)) spaces[0].push_back({a});
  for (const ActionSet& a : Prefixes(3)) spaces[1].push_back({a});
  return LubaGame(config, std::move(spaces));
}

TabularGame TwoByTwoRiskGame(double v, double theta_1, double theta_2) {
  // Profiles (a1, a2) flattened as 2*a1 + a2; action 0 = no bid, 1 = bid 1.
  std::vector<double> first = {0, 0, v - 1, -1};
  std::vector<double> second = {0, v - 1, 0, -1};
  return TabularGame({2, 2}, {first, second}, {theta_1, theta_2});
}

LubaGame ThreeBidderSymmetricGame(double v, double c) {
  AuctionConfig config = ClosedFormConfig(3, v, c, 2);
  return LubaGame::SingleItem(
      config, {ActionSet{}, ActionSet{1}, ActionSet{2}, ActionSet{1, 2}});
}

namespace {

// Payoff comparison helper: exact when the game supports it.
class PayoffOracle {
 public:
  explicit PayoffOracle(const NormalFormGame& game) : game_(game) {
    std::vector<int> zero(game.NumPlayers(), 0);
    exact_ = game.ExactPayoff(0, zero).has_value();
  }

  // Strictly positive gain of moving `player` to `action`.
  bool Improves(int player, std::vector<int>& profile, int action) {
    int current = profile[player];
    if (exact_) {
      int64_t before = *game_.ExactPayoff(player, profile);
      profile[player] = action;
      int64_t after = *game_.ExactPayoff(player, profile);
      profile[player] = current;
      return after > before;
    }
    double before = game_.Payoff(player, profile);
    profile[player] = action;
    double after = game_.Payoff(player, profile);
    profile[player] = current;
    return after > before + 1e-9 * std::max(1.0, std::abs(before));
  }

 private:
  const NormalFormGame& game_;
  bool exact_ = false;
};

void CheckProfileCap(const NormalFormGame& game, int64_t max_profiles) {
  int64_t total = game.NumProfiles();
  if (total > max_profiles) {
    throw CapExceededError("joint action space has " +
                           (total == std::numeric_limits<int64_t>::max()
                                ? std::string("too many")
                                : std::to_string(total)) +
                           " profiles, cap is " +
                           std::to_string(max_profiles));
  }
}

}  // namespace

std::vector<std::vector<int>> PureEquilibria(const NormalFormGame& game,
                                             int64_t max_profiles) {
  CheckProfileCap(game, max_profiles);
  PayoffOracle oracle(game);
  std::vector<std::vector<int>> equilibria;
  int64_t total = game.NumProfiles();
  for (int64_t index = 0; index < total; ++index) {
    std::vector<int> profile = DecodeProfile(game, index);
    bool stable = true;
    for (int j = 0; j < game.NumPlayers() && stable; ++j) {
      for (int a = 0; a < game.NumActions(j) && stable; ++a) {
        if (a != profile[j] && oracle.Improves(j, profile, a)) stable = false;
      }
    }
    if (stable) equilibria.push_back(std::move(profile));
  }
  return equilibria;
}

std::vector<BidProfile> PureEquilibria(const AuctionConfig& config,
                                       ActionMode mode, BudgetFilter filter) {
  config.Validate();
  LubaGame game = LubaGame::FromConfig(config, mode, filter);
  std::vector<BidProfile> profiles;
  for (const auto& eq : PureEquilibria(game)) {
    profiles.push_back(game.Profile(eq));
  }
  return profiles;
}

std::vector<std::vector<std::vector<int>>> SingleBidPureEquilibria(
    const AuctionConfig& config) {
  config.ValidateShape();
  int n = config.num_bidders;
  int m = config.num_items;
  std::vector<std::vector<int>> eligible(m);
  for (int i = 0; i < m; ++i) {
    double threshold =
        1.0 + config.submission_costs[i] + config.registration_fee;
    for (int j = 0; j < n; ++j) {
      if (config.Value(j, i) > threshold) eligible[i].push_back(j);
    }
    if (eligible[i].empty()) return {};
  }
  int64_t total = 1;
  for (const auto& e : eligible) {
    total *= static_cast<int64_t>(e.size());
    if (total > kMaxJointProfiles) {
      throw CapExceededError("too many single-bid assignments");
    }
  }
  std::vector<std::vector<std::vector<int>>> result;
  std::vector<size_t> cursor(m, 0);
  for (int64_t t = 0; t < total; ++t) {
    std::vector<std::vector<int>> b(n, std::vector<int>(m, 0));
    std::vector<int> load(n, 0);
    for (int i = 0; i < m; ++i) {
      int j = eligible[i][cursor[i]];
      b[j][i] = 1;
      ++load[j];
    }
    bool fits = true;
    for (int j = 0; j < n; ++j) fits = fits && load[j] <= config.budgets[j];
    if (fits) result.push_back(std::move(b));
    for (int i = m; i-- > 0;) {
      if (++cursor[i] < eligible[i].size()) break;
      cursor[i] = 0;
    }
  }
  return result;
}

std::optional<std::vector<std::vector<int>>> BetterReplyCycle(
    const NormalFormGame& game, int64_t max_profiles) {
  CheckProfileCap(game, max_profiles);
  PayoffOracle oracle(game);
  int64_t total = game.NumProfiles();
  enum : uint8_t { kWhite, kGray, kBlack };
  std::vector<uint8_t> color(total, kWhite);

  struct Frame {
    int64_t node;
    std::vector<int> profile;
    int player = 0;
    int action = 0;
  };

  for (int64_t root = 0; root < total; ++root) {
    if (color[root] != kWhite) continue;
    std::vector<Frame> stack;
    stack.push_back({root, DecodeProfile(game, root)});
    color[root] = kGray;
    while (!stack.empty()) {
      Frame& top = stack.back();
      bool pushed = false;
      while (top.player < game.NumPlayers()) {
        int j = top.player;
        int a = top.action++;
        if (top.action >= game.NumActions(j)) {
          top.player++;
          top.action = 0;
        }
        if (a == top.profile[j] || !oracle.Improves(j, top.profile, a)) {
          continue;
        }
        std::vector<int> next = top.profile;
        next[j] = a;
        int64_t id = EncodeProfile(game, next);
        if (color[id] == kGray) {
          std::vector<std::vector<int>> cycle;
          size_t start = 0;
          while (stack[start].node != id) ++start;
          for (size_t k = start; k < stack.size(); ++k) {
            cycle.push_back(stack[k].profile);
          }
          return cycle;
        }
        if (color[id] == kWhite) {
          color[id] = kGray;
          stack.push_back({id, std::move(next)});
          pushed = true;
          break;
        }
      }
      if (!pushed) {
        color[stack.back().node] = kBlack;
        stack.pop_back();
      }
    }
  }
  return std::nullopt;
}

std::vector<BidProfile> ConstructImprovementCycle(int num_bidders) {
  if (num_bidders < 2) {
    throw std::invalid_argument("the cycle needs at least two bidders");
  }
  int n = num_bidders;
  std::vector<ActionSet> row(n);
  std::vector<BidProfile> cycle;
  auto snapshot = [&]() {
    std::vector<JointAction> rows;
    for (const ActionSet& a : row) rows.push_back({a});
    cycle.emplace_back(std::move(rows));
  };
  row[0] = ActionSet{1};
  snapshot();
  for (int j = 1; j < n; ++j) {
    row[j] = ActionSet::Prefix(j + 1);
    snapshot();
  }
  for (int j = 0; j < n - 1; ++j) {
    row[j] = ActionSet{};
    snapshot();
  }
  row[n - 1] = ActionSet{1};
  snapshot();
  row[0] = ActionSet{1, 2};
  snapshot();
  row[n - 1] = ActionSet{};
  snapshot();
  // The next move, bidder 0 back to {1}, closes the cycle at cycle[0].
  return cycle;
}

CycleReport ValidateImprovementCycle(const AuctionConfig& config,
                                     std::span<const BidProfile> cycle) {
  CycleReport report;
  if (cycle.size() < 2) {
    report.reason = "a cycle needs at least two profiles";
    return report;
  }
  auto scale = ExactScale(config);
  for (size_t k = 0; k < cycle.size(); ++k) {
    const BidProfile& from = cycle[k];
    const BidProfile& to = cycle[(k + 1) % cycle.size()];
    if (from.num_bidders() != config.num_bidders ||
        to.num_bidders() != config.num_bidders ||
        from.num_items() != config.num_items ||
        to.num_items() != config.num_items) {
      report.reason = "step " + std::to_string(k) + ": dimension mismatch";
      return report;
    }
    int mover = -1;
    for (int j = 0; j < config.num_bidders; ++j) {
      if (from.Row(j) == to.Row(j)) continue;
      if (mover >= 0) {
        report.reason =
            "step " + std::to_string(k) + ": more than one bidder moves";
        return report;
      }
      mover = j;
    }
    if (mover < 0) {
      report.reason = "step " + std::to_string(k) + ": no bidder moves";
      return report;
    }
    auto before = ComputePayoffs(from, config, ResolveProfile(from));
    auto after = ComputePayoffs(to, config, ResolveProfile(to));
    double gain = after.bidder_totals[mover] - before.bidder_totals[mover];
    bool strict = scale ? std::llround(gain * *scale) > 0 : gain > 1e-9;
    report.movers.push_back(mover);
    report.gains.push_back(gain);
    if (!strict) {
      report.reason = "step " + std::to_string(k) + ": bidder " +
                      std::to_string(mover) + " does not strictly improve";
      return report;
    }
  }
  report.valid = true;
  return report;
}

GlobalOptimum ComputeGlobalOptimum(const AuctionConfig& config) {
  config.ValidateShape();
  GlobalOptimum result;
  result.witness = BidProfile(config.num_bidders, config.num_items);
  for (int i = 0; i < config.num_items; ++i) {
    int best = 0;
    for (int j = 1; j < config.num_bidders; ++j) {
      if (config.Value(j, i) > config.Value(best, i)) best = j;
    }
    double surplus = config.Value(best, i) - config.registration_fee -
                     config.submission_costs[i] - 1.0;
    if (surplus <= 0) continue;
    result.go_payoff += surplus;
    result.witness.at(best, i) = ActionSet{1};
  }
  result.inefficiency_gap = result.go_payoff;
  return result;
}

bool IsParetoOptimal(const LubaGame& game, std::span<const int> profile) {
  CheckProfileCap(game, kMaxJointProfiles);
  std::vector<double> base = game.Payoffs(profile);
  constexpr double kTol = 1e-9;
  for (int64_t index = 0; index < game.NumProfiles(); ++index) {
    std::vector<int> other = DecodeProfile(game, index);
    std::vector<double> payoffs = game.Payoffs(other);
    bool weakly = true;
    bool strictly = false;
    for (size_t j = 0; j < base.size(); ++j) {
      if (payoffs[j] < base[j] - kTol) weakly = false;
      if (payoffs[j] > base[j] + kTol) strictly = true;
    }
    if (weakly && strictly) return false;
  }
  return true;
}

}  // namespace luba
