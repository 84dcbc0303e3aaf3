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

#ifndef LUBA_REVENUE_H_
#define LUBA_REVENUE_H_

// Seller revenue when the number of bidders placing bid b is Poisson with
// mean lambda_b = (v/c)(1 + b)^{-z}, independently across b = 1..cap.

#include <string>
#include <vector>

namespace luba {

struct PoissonRevenueModel {
  double value = 10.0;            // v_i
  double cost = 1.0;              // c_i, > 0
  double tail_exponent = 1.0;     // z >= 0
  double registration_fee = 0.0;  // c_r
  int bid_cap = 10;               // effective cap is min(bid_cap, floor(v/c))

  // Throws std::invalid_argument for invalid fields.
  void Validate() const;
  int EffectiveCap() const;
  double Rate(int bid) const;  // lambda_b
  std::vector<double> Rates() const;
};

// P(bid b is unique) = lambda_b e^{-lambda_b}.
double UniqueProbability(double rate);

// sum_b b p_b prod_{b'<b} (1 - p_b'); no unique bid contributes 0.
double ExpectedMinUnique(const PoissonRevenueModel& model);
double ExpectedMinUnique(const std::vector<double>& rates);

// sum_b lambda_b c = v sum_b (1 + b)^{-z}.
double SubmissionFeeRevenue(const PoissonRevenueModel& model);

// n c_r + sum_b lambda_b c + E[min unique] - v.
double ExpectedRevenue(const PoissonRevenueModel& model, int n_registrants);

// Revenue when the winner pays nothing beyond fees (all-pay comparison).
double AllPayRevenue(const PoissonRevenueModel& model, int n_registrants);

// LUBA minus all-pay revenue; equals ExpectedMinUnique.
double AllPayGap(const PoissonRevenueModel& model, int n_registrants);

// sum_{b <= cap} (1+b)^{-z} > 1 - (n c_r + E[min unique]) / v.
bool ProfitabilityCondition(const PoissonRevenueModel& model,
                            int n_registrants);

enum class ThresholdVerdict { kCrossing, kAlwaysProfitable, kNeverProfitable };

struct ProfitThreshold {
  ThresholdVerdict verdict = ThresholdVerdict::kCrossing;
  double z = 0.0;  // meaningful for kCrossing
  double revenue_at_z = 0.0;
};

// Bisection on z in [z_min, z_max] for the zero of ExpectedRevenue. Boundary
// verdicts when the sign does not change.
ProfitThreshold ProfitThresholdZ(const PoissonRevenueModel& model,
                                 int n_registrants, double z_min = 0.0,
                                 double z_max = 50.0, double tol = 1e-8);

struct RevenuePoint {
  double z = 0.0;
  double fee_revenue = 0.0;
  double expected_min_unique = 0.0;
  double total = 0.0;
};

std::vector<RevenuePoint> RevenueCurve(const PoissonRevenueModel& model,
                                       int n_registrants,
                                       const std::vector<double>& zs);

std::string ToString(ThresholdVerdict verdict);

}  // namespace luba

#endif  // LUBA_REVENUE_H_
