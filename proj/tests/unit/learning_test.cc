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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "luba/random.h"

namespace luba {
namespace {

std::vector<double> RandomSimplex(Philox4x32& rng, int n) {
  std::vector<double> s(n);
  for (double& x : s) x = 0.01 + rng.Uniform();
  double total = std::accumulate(s.begin(), s.end(), 0.0);
  for (double& x : s) x /= total;
  return s;
}

double Objective(const std::vector<double>& q, const std::vector<double>& s,
                 const std::vector<double>& r, double eps) {
  double value = 0.0;
  for (size_t k = 0; k < q.size(); ++k) {
    value += q[k] * r[k];
    if (q[k] > 0) value -= eps * q[k] * std::log(q[k] / s[k]);
  }
  return value;
}

TEST(CodipasTest, PowerRuleMatchesDirectFormula) {
  LearnerCell cell{{0.0, 1.0, 2.0}, {0.2, 0.3, 0.5}};
  LearningParams params;
  params.alpha = 0.5;
  params.lambda = 0.1;
  CodipasUpdate(cell, 0, 4.0, params);
  EXPECT_DOUBLE_EQ(cell.r_hat[0], 2.0);
  std::vector<double> w = {0.2 * std::pow(1.1, 2.0), 0.3 * std::pow(1.1, 1.0),
                           0.5 * std::pow(1.1, 2.0)};
  double total = w[0] + w[1] + w[2];
  for (int k = 0; k < 3; ++k) EXPECT_NEAR(cell.strategy[k], w[k] / total, 1e-15);
}

TEST(CodipasTest, StaysOnSimplexUnderExtremeRewards) {
  Philox4x32 rng(5);
  LearnerCell cell{std::vector<double>(6, 0.0), RandomSimplex(rng, 6)};
  LearningParams params;
  params.rule = UpdateRule::kBoltzmann;
  params.epsilon = 0.01;
  for (int t = 0; t < 2000; ++t) {
    int a = static_cast<int>(rng.Uniform() * 6);
    CodipasUpdate(cell, a, (rng.Uniform() - 0.5) * 1e4, params);
    double total = 0.0;
    for (double p : cell.strategy) {
      ASSERT_TRUE(std::isfinite(p));
      ASSERT_GE(p, 0.0);
      total += p;
    }
    ASSERT_NEAR(total, 1.0, 1e-12);
  }
}

TEST(CodipasTest, InvalidParams) {
  LearningParams params;
  params.alpha = 0.0;
  EXPECT_THROW(params.Validate(), std::invalid_argument);
  LearnerCell cell{{0.0}, {1.0}};
  EXPECT_THROW(CodipasUpdate(cell, 1, 0.0, LearningParams{}),
               std::out_of_range);
}

TEST(IbgTest, MaximizesEntropyPenalizedPayoff) {
  Philox4x32 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    auto s = RandomSimplex(rng, 5);
    std::vector<double> r(5);
    for (double& x : r) x = rng.Normal() * 3;
    double eps = 0.1 + rng.Uniform() * 2;
    auto best = IbgStrategy(s, r, eps);
    double value = Objective(best, s, r, eps);
    IbgValue w = ComputeIbgValue(s, r, eps);
    EXPECT_NEAR(value, w.w, 1e-9);
    EXPECT_NEAR(w.nu, w.w - eps, 1e-12);
    for (int k = 0; k < 10; ++k) {
      auto q = RandomSimplex(rng, 5);
      ASSERT_LE(Objective(q, s, r, eps), value + 1e-12);
    }
  }
}

TEST(IbgTest, TemperatureLimits) {
  std::vector<double> s = {0.1, 0.6, 0.3};
  std::vector<double> r = {1.0, 0.5, 0.2};
  EXPECT_GT(IbgStrategy(s, r, 1e-3)[0], 0.999);
  double mean = 0.1 * 1.0 + 0.6 * 0.5 + 0.3 * 0.2;
  EXPECT_NEAR(ComputeIbgValue(s, r, 1e6).w, mean, 1e-3);
  EXPECT_THROW(IbgStrategy(s, r, 0.0), std::invalid_argument);
}

TEST(ReplicatorTest, TangentToSimplexAndZeroAtVertices) {
  Philox4x32 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    auto s = RandomSimplex(rng, 7);
    std::vector<double> u(7);
    for (double& x : u) x = rng.Normal() * 100;
    auto field = ReplicatorField(s, u);
    double scale = 0.0;
    for (double f : field) scale = std::max(scale, std::abs(f));
    EXPECT_LE(std::abs(std::accumulate(field.begin(), field.end(), 0.0)),
              1e-14 * scale);
    double mean = 0.0;
    for (int k = 0; k < 7; ++k) mean += s[k] * u[k];
    for (int k = 0; k < 7; ++k) {
      EXPECT_NEAR(field[k], s[k] * (u[k] - mean), 1e-12 * (1 + scale));
    }
  }
  std::vector<double> vertex = {0, 1, 0};
  for (double f : ReplicatorField(vertex, std::vector<double>{5, -1, 9})) {
    EXPECT_EQ(f, 0.0);
  }
}

TEST(RmseTest, Simple) {
  std::vector<std::vector<std::vector<double>>> a = {{{1.0, 0.0}}};
  std::vector<std::vector<std::vector<double>>> b = {{{0.0, 1.0}}};
  EXPECT_NEAR(Rmse(a, b), std::sqrt(2.0), 1e-15);
  EXPECT_EQ(Rmse(a, a), 0.0);
}

TEST(MonteCarloTest, TooHighMovesMassBelow) {
  MonteCarloBelief belief = MonteCarloBelief::Uniform(5);
  MonteCarloBelief next = MonteCarloStep(belief, Feedback::kTooHigh, 3);
  EXPECT_EQ(next.delta[2], 0.0);
  EXPECT_NEAR(next.delta[0], 0.2 + 0.1, 1e-15);
  EXPECT_NEAR(next.delta[1], 0.2 + 0.1, 1e-15);
  EXPECT_NEAR(next.delta[3], 0.2, 1e-15);
  EXPECT_TRUE(next.forbidden.contains(3));
}

TEST(MonteCarloTest, NonUniqueSpreadsOverAllowed) {
  MonteCarloBelief belief = MonteCarloBelief::Uniform(4);
  MonteCarloBelief next = MonteCarloStep(belief, Feedback::kNonUnique, 2);
  EXPECT_EQ(next.delta[1], 0.0);
  for (int b : {0, 2, 3}) EXPECT_NEAR(next.delta[b], 0.25 + 0.25 / 3, 1e-15);
  EXPECT_EQ(MonteCarloStep(next, Feedback::kWin, 1).delta, next.delta);
}

TEST(MonteCarloTest, RandomWalkStaysNormalized) {
  Philox4x32 rng(9);
  MonteCarloBelief belief = MonteCarloBelief::Uniform(10);
  for (int t = 0; t < 5000; ++t) {
    int k = rng.Categorical(belief.delta) + 1;
    auto feedback = static_cast<Feedback>(static_cast<int>(rng.Uniform() * 3));
    belief = MonteCarloStep(belief, feedback, k);
    double total = std::accumulate(belief.delta.begin(), belief.delta.end(),
                                   0.0);
    ASSERT_NEAR(total, 1.0, 1e-12);
    for (int b : belief.forbidden) ASSERT_EQ(belief.delta[b - 1], 0.0);
  }
}

TEST(MonteCarloTest, Errors) {
  MonteCarloBelief belief = MonteCarloBelief::Uniform(3);
  EXPECT_THROW(MonteCarloStep(belief, Feedback::kTooHigh, 4),
               std::out_of_range);
  auto next = MonteCarloStep(belief, Feedback::kNonUnique, 1);
  EXPECT_THROW(MonteCarloStep(next, Feedback::kNonUnique, 1),
               std::invalid_argument);
}

}  // namespace
}  // namespace luba
