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

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>

#include "luba/errors.h"
#include "luba/random.h"

namespace luba {
namespace {

constexpr int kMaxResamples = 100;

void Require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError(what);
}

StrategyProfile Strategies(const LearningState& state) {
  StrategyProfile out(state.cells.size());
  for (size_t j = 0; j < state.cells.size(); ++j) {
    for (const LearnerCell& cell : state.cells[j]) {
      out[j].push_back(cell.strategy);
    }
  }
  return out;
}

bool WantSnapshot(const SimulationConfig& config, int t) {
  if (t == config.iterations) return true;
  if (config.record_stride > 0 && t > 0 && t % config.record_stride == 0) {
    return true;
  }
  return std::find(config.snapshot_iterations.begin(),
                   config.snapshot_iterations.end(),
                   t) != config.snapshot_iterations.end();
}

// Per-iteration bookkeeping shared by both learners.
class Recorder {
 public:
  Recorder(const SimulationConfig& config, Trajectory& trajectory)
      : config_(config), trajectory_(trajectory) {
    trajectory_.actions.reserve(config.iterations);
    trajectory_.payoffs.reserve(config.iterations);
    trajectory_.winners.reserve(config.iterations);
    trajectory_.rmse.reserve(config.iterations);
  }

  void Initial(const StrategyProfile& strategies) {
    previous_ = strategies;
    if (WantSnapshot(config_, 0)) {
      trajectory_.snapshots.push_back({0, strategies});
    }
  }

  void Step(int t, std::vector<int> actions, std::vector<double> payoffs,
            std::vector<int> winners, const StrategyProfile& strategies) {
    trajectory_.actions.push_back(std::move(actions));
    trajectory_.payoffs.push_back(std::move(payoffs));
    trajectory_.winners.push_back(std::move(winners));
    trajectory_.rmse.push_back(Rmse(strategies, previous_));
    if (WantSnapshot(config_, t)) {
      trajectory_.snapshots.push_back({t, strategies});
    }
    previous_ = strategies;
  }

 private:
  const SimulationConfig& config_;
  Trajectory& trajectory_;
  StrategyProfile previous_;
};

// Resolves the sampled profile and returns (observed payoffs, winners).
void Settle(const AuctionConfig& auction, const BidProfile& profile,
            double noise_std, Philox4x32& rng, std::vector<double>& payoffs,
            std::vector<int>& winners,
            std::vector<ItemOutcome>& outcomes) {
  outcomes = ResolveProfile(profile);
  int m = auction.num_items;
  payoffs.assign(auction.num_bidders * m, 0.0);
  winners.assign(m, -1);
  for (int i = 0; i < m; ++i) {
    if (outcomes[i].winner) winners[i] = *outcomes[i].winner;
  }
  for (int j = 0; j < auction.num_bidders; ++j) {
    for (int i = 0; i < m; ++i) {
      const ActionSet& bids = profile.at(j, i);
      if (bids.empty()) continue;
      double r = BidderItemPayoff(auction, j, i, bids, outcomes[i]);
      if (noise_std > 0) r += noise_std * rng.Normal();
      payoffs[j * m + i] = r;
    }
  }
}

Trajectory RunCodipas(const SimulationConfig& config) {
  const AuctionConfig& auction = config.auction;
  int n = auction.num_bidders;
  int m = auction.num_items;
  Trajectory trajectory;
  trajectory.num_bidders = n;
  trajectory.num_items = m;
  trajectory.action_spaces =
      LearningActionSpaces(auction, config.action_mode, config.budget_mode);
  const auto& spaces = trajectory.action_spaces;

  Philox4x32 rng(config.seed);
  LearningState state;
  state.params = config.params;
  state.rng_seed = config.seed;
  state.remaining_budget = auction.budgets;
  state.cells.resize(n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < m; ++i) {
      LearnerCell cell;
      size_t k = spaces[j][i].size();
      cell.strategy.assign(k, 1.0 / k);
      cell.r_hat.resize(k);
      for (double& r : cell.r_hat) {
        r = config.initial_estimates == InitialEstimates::kUniform
                ? rng.Uniform()
                : config.initial_value;
      }
      state.cells[j].push_back(std::move(cell));
    }
  }

  Recorder recorder(config, trajectory);
  recorder.Initial(Strategies(state));
  std::vector<ItemOutcome> outcomes;
  for (int t = 1; t <= config.iterations; ++t) {
    std::vector<int> chosen(n * m, 0);
    BidProfile profile(n, m);
    for (int j = 0; j < n; ++j) {
      JointAction row(m);
      auto draw = [&]() {
        for (int i = 0; i < m; ++i) {
          chosen[j * m + i] = rng.Categorical(state.cells[j][i].strategy);
          row[i] = spaces[j][i][chosen[j * m + i]];
        }
      };
      draw();
      if (config.budget_mode != BudgetMode::kStatic) {
        double budget = config.budget_mode == BudgetMode::kDepleting
                            ? state.remaining_budget[j]
                            : auction.budgets[j];
        auto affordable = [&]() {
          return Spend(auction, j, row, Settlement::kExAnte) <= budget + 1e-12;
        };
        int attempts = 0;
        while (!affordable() && attempts < kMaxResamples) {
          ++trajectory.rejections;
          ++attempts;
          draw();
        }
        // Still unaffordable: withdraw from items, last first. Index 0 of
        // every action list is the empty set.
        for (int i = m - 1; i >= 0 && !affordable(); --i) {
          chosen[j * m + i] = 0;
          row[i] = spaces[j][i][0];
        }
      }
      for (int i = 0; i < m; ++i) profile.at(j, i) = row[i];
    }

    std::vector<double> payoffs;
    std::vector<int> winners;
    Settle(auction, profile, config.noise_std, rng, payoffs, winners,
           outcomes);

    if (config.budget_mode == BudgetMode::kDepleting) {
      for (int j = 0; j < n; ++j) {
        JointAction row = profile.Row(j);
        double spend = Spend(auction, j, row, Settlement::kExPost, outcomes);
        state.remaining_budget[j] =
            std::max(0.0, state.remaining_budget[j] - spend);
      }
    }

    LearningParams params = config.params;
    if (config.schedule == EpsilonSchedule::kHarmonic) {
      params.epsilon = config.params.epsilon / t;
    }
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < m; ++i) {
        CodipasUpdate(state.cells[j][i], chosen[j * m + i],
                      payoffs[j * m + i], params);
      }
    }
    recorder.Step(t, std::move(chosen), std::move(payoffs),
                  std::move(winners), Strategies(state));
  }
  trajectory.final_strategies = Strategies(state);
  trajectory.remaining_budget = state.remaining_budget;
  return trajectory;
}

Trajectory RunMonteCarlo(const SimulationConfig& config) {
  const AuctionConfig& auction = config.auction;
  int n = auction.num_bidders;
  int m = auction.num_items;
  Trajectory trajectory;
  trajectory.num_bidders = n;
  trajectory.num_items = m;
  trajectory.action_spaces.resize(n);

  // beliefs[j][i] is absent (max_bid 0) when only the empty set survives
  // the dominance reduction.
  std::vector<std::vector<MonteCarloBelief>> beliefs(n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < m; ++i) {
      int max_bid = ReduceActionSpace(auction, j, i).max_bid;
      trajectory.action_spaces[j].push_back(
          EnumerateActions(max_bid, ActionMode::kSingletons));
      beliefs[j].push_back(max_bid > 0 ? MonteCarloBelief::Uniform(max_bid)
                                       : MonteCarloBelief{});
    }
  }
  auto strategies = [&]() {
    StrategyProfile out(n);
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < m; ++i) {
        std::vector<double> probs = {beliefs[j][i].delta.empty() ? 1.0 : 0.0};
        probs.insert(probs.end(), beliefs[j][i].delta.begin(),
                     beliefs[j][i].delta.end());
        out[j].push_back(std::move(probs));
      }
    }
    return out;
  };

  Philox4x32 rng(config.seed);
  Recorder recorder(config, trajectory);
  recorder.Initial(strategies());
  std::vector<ItemOutcome> outcomes;
  for (int t = 1; t <= config.iterations; ++t) {
    std::vector<int> chosen(n * m, 0);
    BidProfile profile(n, m);
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < m; ++i) {
        if (beliefs[j][i].delta.empty()) continue;
        int bid = rng.Categorical(beliefs[j][i].delta) + 1;
        chosen[j * m + i] = bid;
        profile.at(j, i) = ActionSet{bid};
      }
    }
    std::vector<double> payoffs;
    std::vector<int> winners;
    Settle(auction, profile, config.noise_std, rng, payoffs, winners,
           outcomes);
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < m; ++i) {
        int bid = chosen[j * m + i];
        if (bid == 0) continue;
        Feedback feedback;
        if (winners[i] == j) {
          feedback = Feedback::kWin;
        } else if (outcomes[i].histogram.at(bid) > 1) {
          feedback = Feedback::kNonUnique;
        } else {
          feedback = Feedback::kTooHigh;
        }
        beliefs[j][i] = MonteCarloStep(beliefs[j][i], feedback, bid);
      }
    }
    recorder.Step(t, std::move(chosen), std::move(payoffs),
                  std::move(winners), strategies());
  }
  trajectory.final_strategies = strategies();
  trajectory.remaining_budget = auction.budgets;
  return trajectory;
}

template <typename Enum>
struct Names {
  Enum value;
  const char* name;
};

template <typename Enum, size_t N>
std::string NameOf(const Names<Enum> (&table)[N], Enum value) {
  for (const auto& entry : table) {
    if (entry.value == value) return entry.name;
  }
  return "unknown";
}

template <typename Enum, size_t N>
Enum Parse(const Names<Enum> (&table)[N], const std::string& name,
           const char* what) {
  std::string options;
  for (const auto& entry : table) {
    if (name == entry.name) return entry.value;
    options += options.empty() ? "" : ", ";
    options += entry.name;
  }
  throw ConfigError(std::string("unknown ") + what + " '" + name +
                    "' (expected " + options + ")");
}

constexpr Names<Algorithm> kAlgorithms[] = {
    {Algorithm::kCodipas, "codipas"}, {Algorithm::kMonteCarlo, "monte-carlo"}};
constexpr Names<BudgetMode> kBudgetModes[] = {
    {BudgetMode::kStatic, "static"},
    {BudgetMode::kExAnte, "ex_ante"},
    {BudgetMode::kDepleting, "depleting"}};
constexpr Names<UpdateRule> kUpdateRules[] = {
    {UpdateRule::kPower, "power"}, {UpdateRule::kBoltzmann, "boltzmann"}};
constexpr Names<InitialEstimates> kInitialEstimates[] = {
    {InitialEstimates::kUniform, "uniform"},
    {InitialEstimates::kConstant, "constant"}};
constexpr Names<EpsilonSchedule> kSchedules[] = {
    {EpsilonSchedule::kConstant, "constant"},
    {EpsilonSchedule::kHarmonic, "harmonic"}};

}  // namespace

void SimulationConfig::Validate() const {
  auction.Validate();
  Require(iterations >= 1, "iterations must be >= 1");
  Require(std::isfinite(noise_std) && noise_std >= 0,
          "noise_std must be >= 0");
  Require(record_stride >= 0, "record_stride must be >= 0");
  for (int t : snapshot_iterations) {
    Require(t >= 0 && t <= iterations,
            "snapshot_iterations must lie in [0, iterations]");
  }
  if (algorithm == Algorithm::kCodipas) {
    try {
      params.Validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
}

std::vector<std::vector<std::vector<ActionSet>>> LearningActionSpaces(
    const AuctionConfig& auction, ActionMode mode, BudgetMode budget_mode) {
  std::vector<std::vector<std::vector<ActionSet>>> spaces(auction.num_bidders);
  for (int j = 0; j < auction.num_bidders; ++j) {
    for (int i = 0; i < auction.num_items; ++i) {
      std::vector<ActionSet> actions;
      if (budget_mode == BudgetMode::kStatic) {
        int cap = ReduceActionSpace(auction, j, i).max_resubmissions;
        for (ActionSet& a : EnumerateActions(auction, j, i, mode)) {
          if (a.size() <= cap) actions.push_back(std::move(a));
        }
      } else {
        actions = FeasibleActions(auction, j, i, mode);
      }
      spaces[j].push_back(std::move(actions));
    }
  }
  return spaces;
}

Trajectory RunSimulation(const SimulationConfig& config) {
  config.Validate();
  return config.algorithm == Algorithm::kCodipas ? RunCodipas(config)
                                                 : RunMonteCarlo(config);
}

void WriteTrajectoryCsv(const Trajectory& trajectory, std::ostream& out) {
  out << "iteration,bidder,item,action_id,probability,rmse,payoff,"
         "winner_flag\n";
  int m = trajectory.num_items;
  for (const Snapshot& snap : trajectory.snapshots) {
    int t = snap.iteration;
    for (int j = 0; j < trajectory.num_bidders; ++j) {
      for (int i = 0; i < m; ++i) {
        double rmse = t > 0 ? trajectory.rmse[t - 1] : 0.0;
        double payoff = t > 0 ? trajectory.payoffs[t - 1][j * m + i] : 0.0;
        int flag = t > 0 && trajectory.winners[t - 1][i] == j ? 1 : 0;
        const auto& probs = snap.strategies[j][i];
        for (size_t a = 0; a < probs.size(); ++a) {
          out << t << ',' << j << ',' << i << ',' << a << ','
              << FormatDouble(probs[a]) << ',' << FormatDouble(rmse) << ','
              << FormatDouble(payoff) << ',' << flag << '\n';
        }
      }
    }
  }
}

std::string ToString(Algorithm algorithm) {
  return NameOf(kAlgorithms, algorithm);
}
Algorithm ParseAlgorithm(const std::string& name) {
  return Parse(kAlgorithms, name, "algorithm");
}
std::string ToString(BudgetMode mode) { return NameOf(kBudgetModes, mode); }
BudgetMode ParseBudgetMode(const std::string& name) {
  return Parse(kBudgetModes, name, "budget mode");
}
std::string ToString(UpdateRule rule) { return NameOf(kUpdateRules, rule); }
UpdateRule ParseUpdateRule(const std::string& name) {
  return Parse(kUpdateRules, name, "update rule");
}
std::string ToString(InitialEstimates init) {
  return NameOf(kInitialEstimates, init);
}
InitialEstimates ParseInitialEstimates(const std::string& name) {
  return Parse(kInitialEstimates, name, "initial estimates");
}
std::string ToString(EpsilonSchedule schedule) {
  return NameOf(kSchedules, schedule);
}
EpsilonSchedule ParseEpsilonSchedule(const std::string& name) {
  return Parse(kSchedules, name, "epsilon schedule");
}

std::string FormatDouble(double x) {
  char buffer[32];
  auto result = std::to_chars(buffer, buffer + sizeof(buffer), x);
  return std::string(buffer, result.ptr);
}

}  // namespace luba
