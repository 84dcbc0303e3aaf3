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

#ifndef LUBA_LEARNING_H_
#define LUBA_LEARNING_H_

// Payoff-and-strategy learning (CODIPAS), the imitative Boltzmann-Gibbs
// update it is built on, replicator dynamics and the Monte-Carlo single-bid
// learner.

#include <cstdint>
#include <set>
#include <span>
#include <vector>

namespace luba {

enum class UpdateRule {
  kPower,      // s' ~ s (1 + lambda)^{r_hat}
  kBoltzmann,  // s' ~ s exp(r_hat / epsilon)
};

struct LearningParams {
  double alpha = 0.5;    // payoff learning rate, in (0, 1]
  double lambda = 0.1;   // strategy learning rate, > 0
  double epsilon = 1.0;  // temperature for kBoltzmann, > 0
  UpdateRule rule = UpdateRule::kPower;

  // Throws std::invalid_argument for out-of-range rates.
  void Validate() const;
  bool operator==(const LearningParams&) const = default;
};

// Learner state for one bidder on one item.
struct LearnerCell {
  std::vector<double> r_hat;
  std::vector<double> strategy;
};

struct LearningState {
  std::vector<std::vector<LearnerCell>> cells;  // [bidder][item]
  std::vector<double> remaining_budget;         // per bidder
  LearningParams params;
  uint64_t rng_seed = 0;
};

// In-place update of one cell after playing `chosen` and observing `reward`:
// the chosen estimate moves by alpha (reward - estimate); the strategy is
// then tilted by the updated estimates and renormalized in log space.
void CodipasUpdate(LearnerCell& cell, int chosen, double reward,
                   const LearningParams& params);

// One synchronous step for every bidder and item. chosen[j][i] indexes the
// cell's action list; rewards[j][i] is the observed payoff.
LearningState CodipasStep(const LearningState& state,
                          const std::vector<std::vector<int>>& chosen,
                          const std::vector<std::vector<double>>& rewards);

// s'(B) = s(B) e^{r(B)/eps} / sum_B' s(B') e^{r(B')/eps}.
// Throws std::invalid_argument unless eps > 0 and s is strictly positive.
std::vector<double> IbgStrategy(std::span<const double> s,
                                std::span<const double> r_hat, double eps);

struct IbgValue {
  double w = 0.0;   // eps ln sum_B s(B) e^{r(B)/eps}
  double nu = 0.0;  // Lagrange multiplier of the simplex constraint, w - eps
};

IbgValue ComputeIbgValue(std::span<const double> s,
                         std::span<const double> r_hat, double eps);

// s(B) (u(B) - <s, u>). The component of the most played action absorbs the
// rounding so that the field is tangent to the simplex.
std::vector<double> ReplicatorField(std::span<const double> s,
                                    std::span<const double> payoffs);

// Root of the summed squared differences over every bidder, item and action.
// Shapes must match.
double Rmse(const std::vector<std::vector<std::vector<double>>>& current,
            const std::vector<std::vector<std::vector<double>>>& previous);

enum class Feedback { kWin, kNonUnique, kTooHigh };

// Belief over single bids 1..size(); delta[k-1] is the weight of bid k.
struct MonteCarloBelief {
  std::vector<double> delta;
  std::set<int> forbidden;  // bids ruled out by feedback

  static MonteCarloBelief Uniform(int max_bid);
  int max_bid() const { return static_cast<int>(delta.size()); }
};

// kNonUnique zeroes bid k, forbids it and spreads its mass evenly over the
// remaining allowed bids; kTooHigh does the same over allowed bids below k;
// kWin leaves the belief unchanged. An empty target set resets the belief to
// uniform and clears the forbidden set.
MonteCarloBelief MonteCarloStep(const MonteCarloBelief& belief,
                                Feedback feedback, int k);

}  // namespace luba

#endif  // LUBA_LEARNING_H_
