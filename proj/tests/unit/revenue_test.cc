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

#include "luba/revenue.h"

#include <gtest/gtest.h>

#include <cmath>

namespace luba {
namespace {

// E[min unique] by enumerating uniqueness patterns over a short bid range.
double EnumeratedMinUnique(const std::vector<double>& rates) {
  int n = static_cast<int>(rates.size());
  double expected = 0.0;
  for (int mask = 0; mask < (1 << n); ++mask) {
    double p = 1.0;
    int lowest = 0;
    for (int b = 0; b < n; ++b) {
      double q = UniqueProbability(rates[b]);
      bool unique = mask & (1 << b);
      p *= unique ? q : 1 - q;
      if (unique && lowest == 0) lowest = b + 1;
    }
    expected += p * lowest;
  }
  return expected;
}

TEST(RevenueTest, MinUniqueMatchesEnumeration) {
  std::vector<double> rates = {0.3, 1.0, 2.5, 0.7, 4.0, 0.1};
  EXPECT_NEAR(ExpectedMinUnique(rates), EnumeratedMinUnique(rates), 1e-14);
}

TEST(RevenueTest, ModelRatesAndCap) {
  PoissonRevenueModel model{10, 3, 1.0, 0.0, 10};
  EXPECT_EQ(model.EffectiveCap(), 3);
  EXPECT_NEAR(model.Rate(1), 10.0 / 3 / 2, 1e-15);
  model.cost = 1;
  EXPECT_EQ(model.EffectiveCap(), 10);
  model.bid_cap = 4;
  EXPECT_EQ(model.Rates().size(), 4u);
}

TEST(RevenueTest, DecompositionAndGap) {
  PoissonRevenueModel model{10, 1, 0.8, 1.0, 10};
  double fees = SubmissionFeeRevenue(model);
  double direct = 0.0;
  for (int b = 1; b <= 10; ++b) direct += 10 * std::pow(1.0 + b, -0.8);
  EXPECT_NEAR(fees, direct, 1e-12);
  EXPECT_NEAR(ExpectedRevenue(model, 5),
              5 * 1.0 + fees + ExpectedMinUnique(model) - 10, 1e-12);
  EXPECT_NEAR(AllPayGap(model, 5), ExpectedMinUnique(model), 1e-12);
}

TEST(RevenueTest, ConditionAgreesWithSign) {
  for (double cr : {0.0, 0.5, 1.0}) {
    for (int n : {1, 5}) {
      PoissonRevenueModel model{10, 1, 0.0, cr, 10};
      for (int k = 0; k <= 800; ++k) {
        model.tail_exponent = k * 0.01;
        ASSERT_EQ(ProfitabilityCondition(model, n),
                  ExpectedRevenue(model, n) > 0)
            << cr << " " << n << " " << model.tail_exponent;
      }
    }
  }
}

TEST(RevenueTest, ThresholdIsARoot) {
  PoissonRevenueModel model{10, 1, 0.0, 1.0, 10};
  ProfitThreshold t = ProfitThresholdZ(model, 5);
  ASSERT_EQ(t.verdict, ThresholdVerdict::kCrossing);
  EXPECT_NEAR(t.revenue_at_z, 0.0, 1e-7);
  model.tail_exponent = t.z - 1e-3;
  EXPECT_GT(ExpectedRevenue(model, 5), 0.0);
  model.tail_exponent = t.z + 1e-3;
  EXPECT_LT(ExpectedRevenue(model, 5), 0.0);
  PoissonRevenueModel rich{10, 1, 0.0, 5.0, 10};
  EXPECT_EQ(ProfitThresholdZ(rich, 5).verdict,
            ThresholdVerdict::kAlwaysProfitable);
}

TEST(RevenueTest, InvalidModel) {
  PoissonRevenueModel model{10, 0, 1, 0, 10};
  EXPECT_THROW(model.Validate(), std::invalid_argument);
}

}  // namespace
}  // namespace luba
