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

#include "luba/learning.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace luba {
namespace {

// Normalizes exp(log_weights) into `out`, shifting by the maximum first.
void SoftmaxInto(std::vector<double>& log_weights, std::vector<double>& out) {
  double shift = -std::numeric_limits<double>::infinity();
  for (double w : log_weights) shift = std::max(shift, w);
  double sum = 0.0;
  out.resize(log_weights.size());
  for (size_t k = 0; k < log_weights.size(); ++k) {
    out[k] = std::exp(log_weights[k] - shift);
    sum += out[k];
  }
  for (double& p : out) p /= sum;
}

double LogOrMinusInf(double s) {
  return s > 0 ? std::log(s) : -std::numeric_limits<double>::infinity();
}

void CheckTilt(std::span<const double> s, std::span<const double> r_hat,
               double eps) {
  if (!(eps > 0)) throw std::invalid_argument("epsilon must be > 0");
  if (s.size() != r_hat.size() || s.empty()) {
    throw std::invalid_argument("strategy and estimates must match");
  }
  for (double p : s) {
    if (!(p > 0)) {
      throw std::invalid_argument(
          "strategy must be strictly positive (imitation cannot revive "
          "zero-probability actions)");
    }
  }
}

}  // namespace

void LearningParams::Validate() const {
  if (!(alpha > 0 && alpha <= 1)) {
    throw std::invalid_argument("alpha must lie in (0, 1]");
  }
  if (!(lambda > 0) || !std::isfinite(lambda)) {
    throw std::invalid_argument("lambda must be > 0");
  }
  if (rule == UpdateRule::kBoltzmann && !(epsilon > 0)) {
    throw std::invalid_argument("epsilon must be > 0");
  }
}

void CodipasUpdate(LearnerCell& cell, int chosen, double reward,
                   const LearningParams& params) {
  if (chosen < 0 || chosen >= static_cast<int>(cell.r_hat.size())) {
    throw std::out_of_range("chosen action out of range");
  }
  cell.r_hat[chosen] += params.alpha * (reward - cell.r_hat[chosen]);
  double gain = params.rule == UpdateRule::kPower ? std::log1p(params.lambda)
                                                  : 1.0 / params.epsilon;
  std::vector<double> log_weights(cell.strategy.size());
  for (size_t k = 0; k < log_weights.size(); ++k) {
    log_weights[k] = LogOrMinusInf(cell.strategy[k]) + gain * cell.r_hat[k];
  }
  SoftmaxInto(log_weights, cell.strategy);
}

LearningState CodipasStep(const LearningState& state,
                          const std::vector<std::vector<int>>& chosen,
                          const std::vector<std::vector<double>>& rewards) {
  state.params.Validate();
  if (chosen.size() != state.cells.size() ||
      rewards.size() != state.cells.size()) {
    throw std::invalid_argument("one row of actions and rewards per bidder");
  }
  LearningState next = state;
  for (size_t j = 0; j < next.cells.size(); ++j) {
    if (chosen[j].size() != next.cells[j].size() ||
        rewards[j].size() != next.cells[j].size()) {
      throw std::invalid_argument("one action and reward per item");
    }
    for (size_t i = 0; i < next.cells[j].size(); ++i) {
      CodipasUpdate(next.cells[j][i], chosen[j][i], rewards[j][i],
                    next.params);
    }
  }
  return next;
}

std::vector<double> IbgStrategy(std::span<const double> s,
                                std::span<const double> r_hat, double eps) {
  CheckTilt(s, r_hat, eps);
  std::vector<double> log_weights(s.size());
  for (size_t k = 0; k < s.size(); ++k) {
    log_weights[k] = std::log(s[k]) + r_hat[k] / eps;
  }
  std::vector<double> out;
  SoftmaxInto(log_weights, out);
  return out;
}

IbgValue ComputeIbgValue(std::span<const double> s,
                         std::span<const double> r_hat, double eps) {
  CheckTilt(s, r_hat, eps);
  double shift = -std::numeric_limits<double>::infinity();
  for (double r : r_hat) shift = std::max(shift, r / eps);
  double sum = 0.0;
  for (size_t k = 0; k < s.size(); ++k) {
    sum += s[k] * std::exp(r_hat[k] / eps - shift);
  }
  IbgValue value;
  value.w = eps * (shift + std::log(sum));
  value.nu = value.w - eps;
  return value;
}

std::vector<double> ReplicatorField(std::span<const double> s,
                                    std::span<const double> payoffs) {
  if (s.size() != payoffs.size() || s.empty()) {
    throw std::invalid_argument("strategy and payoffs must match");
  }
  double mean = 0.0;
  for (size_t k = 0; k < s.size(); ++k) mean += s[k] * payoffs[k];
  std::vector<double> field(s.size());
  for (size_t k = 0; k < s.size(); ++k) field[k] = s[k] * (payoffs[k] - mean);
  size_t anchor = std::max_element(s.begin(), s.end()) - s.begin();
  double others = 0.0;
  for (size_t k = 0; k < field.size(); ++k) {
    if (k != anchor) others += field[k];
  }
  field[anchor] = -others;
  return field;
}

double Rmse(const std::vector<std::vector<std::vector<double>>>& current,
            const std::vector<std::vector<std::vector<double>>>& previous) {
  if (current.size() != previous.size()) {
    throw std::invalid_argument("bidder count mismatch");
  }
  double sum = 0.0;
  for (size_t j = 0; j < current.size(); ++j) {
    if (current[j].size() != previous[j].size()) {
      throw std::invalid_argument("item count mismatch");
    }
    for (size_t i = 0; i < current[j].size(); ++i) {
      if (current[j][i].size() != previous[j][i].size()) {
        throw std::invalid_argument("action count mismatch");
      }
      for (size_t a = 0; a < current[j][i].size(); ++a) {
        double d = current[j][i][a] - previous[j][i][a];
        sum += d * d;
      }
    }
  }
  return std::sqrt(sum);
}

MonteCarloBelief MonteCarloBelief::Uniform(int max_bid) {
  if (max_bid < 1) throw std::invalid_argument("max_bid must be >= 1");
  MonteCarloBelief belief;
  belief.delta.assign(max_bid, 1.0 / max_bid);
  return belief;
}

MonteCarloBelief MonteCarloStep(const MonteCarloBelief& belief,
                                Feedback feedback, int k) {
  if (k < 1 || k > belief.max_bid()) {
    throw std::out_of_range("bid outside the belief's range");
  }
  if (feedback == Feedback::kWin) return belief;
  if (!(belief.delta[k - 1] > 0)) {
    throw std::invalid_argument("bid k is not in the belief's support");
  }
  MonteCarloBelief next = belief;
  double mass = next.delta[k - 1];
  next.delta[k - 1] = 0.0;
  next.forbidden.insert(k);
  int upper = feedback == Feedback::kTooHigh ? k - 1 : next.max_bid();
  std::vector<int> targets;
  for (int b = 1; b <= upper; ++b) {
    if (!next.forbidden.contains(b)) targets.push_back(b);
  }
  if (targets.empty()) return MonteCarloBelief::Uniform(belief.max_bid());
  for (int b : targets) next.delta[b - 1] += mass / targets.size();
  double total = 0.0;
  for (double d : next.delta) total += d;
  for (double& d : next.delta) d /= total;
  return next;
}

}  // namespace luba
