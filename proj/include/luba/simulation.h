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

#ifndef LUBA_SIMULATION_H_
#define LUBA_SIMULATION_H_

// Repeated play of the LUBA stage game with learning bidders.

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "luba/auction.h"
#include "luba/learning.h"

namespace luba {

enum class Algorithm { kCodipas, kMonteCarlo };

enum class BudgetMode {
  kStatic,     // budget only bounds bids through the dominance reduction
  kExAnte,     // joint draws must be worst-case affordable
  kDepleting,  // as kExAnte against the remaining budget, which shrinks by
               // the settled spend every round
};

enum class InitialEstimates { kUniform, kConstant };

enum class EpsilonSchedule { kConstant, kHarmonic };  // eps, eps / t

struct SimulationConfig {
  AuctionConfig auction;
  Algorithm algorithm = Algorithm::kCodipas;
  int iterations = 1000;
  uint64_t seed = 0;
  double noise_std = 0.0;
  ActionMode action_mode = ActionMode::kPrefixSets;
  BudgetMode budget_mode = BudgetMode::kStatic;
  LearningParams params;
  EpsilonSchedule schedule = EpsilonSchedule::kConstant;
  InitialEstimates initial_estimates = InitialEstimates::kUniform;
  double initial_value = 1e-4;  // used by kConstant
  // Strategy snapshots are kept every `record_stride` iterations (0 keeps
  // only the final one) plus at the listed iterations (1-based).
  int record_stride = 1;
  std::vector<int> snapshot_iterations;

  // Throws ConfigError for invalid combinations.
  void Validate() const;
  bool operator==(const SimulationConfig&) const = default;
};

using StrategyProfile = std::vector<std::vector<std::vector<double>>>;

struct Snapshot {
  int iteration = 0;  // 1-based; 0 is the initial state
  StrategyProfile strategies;
};

struct Trajectory {
  int num_bidders = 0;
  int num_items = 0;
  // Action lists per bidder and item. For the Monte-Carlo learner entry
  // b-1 is the single bid {b}.
  std::vector<std::vector<std::vector<ActionSet>>> action_spaces;
  // Per iteration, flattened [bidder * num_items + item].
  std::vector<std::vector<int>> actions;
  std::vector<std::vector<double>> payoffs;  // observed, including noise
  std::vector<std::vector<int>> winners;     // per item, -1 for none
  std::vector<double> rmse;
  std::vector<Snapshot> snapshots;
  StrategyProfile final_strategies;
  std::vector<double> remaining_budget;
  int64_t rejections = 0;  // infeasible joint draws that were resampled

  int length() const { return static_cast<int>(rmse.size()); }
  const ActionSet& Action(int t, int bidder, int item) const {
    return action_spaces[bidder][item][actions[t][bidder * num_items + item]];
  }
};

// Per-item action lists the learners use under `mode` and `budget_mode`.
std::vector<std::vector<std::vector<ActionSet>>> LearningActionSpaces(
    const AuctionConfig& auction, ActionMode mode, BudgetMode budget_mode);

// Deterministic in (config, seed).
Trajectory RunSimulation(const SimulationConfig& config);

// Columns: iteration,bidder,item,action_id,probability,rmse,payoff,
// winner_flag. One row per recorded snapshot, bidder, item and action;
// payoff and winner_flag refer to the bidder's play at that iteration.
void WriteTrajectoryCsv(const Trajectory& trajectory, std::ostream& out);

std::string ToString(Algorithm algorithm);
Algorithm ParseAlgorithm(const std::string& name);
std::string ToString(BudgetMode mode);
BudgetMode ParseBudgetMode(const std::string& name);
std::string ToString(UpdateRule rule);
UpdateRule ParseUpdateRule(const std::string& name);
std::string ToString(InitialEstimates init);
InitialEstimates ParseInitialEstimates(const std::string& name);
std::string ToString(EpsilonSchedule schedule);
EpsilonSchedule ParseEpsilonSchedule(const std::string& name);

// Shortest round-trip decimal form of a double.
std::string FormatDouble(double x);

}  // namespace luba

#endif  // LUBA_SIMULATION_H_
