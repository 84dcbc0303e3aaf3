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

#include <cmath>
#include <stdexcept>

namespace luba {

void PoissonRevenueModel::Validate() const {
  if (!(value > 0) || !std::isfinite(value)) {
    throw std::invalid_argument("value must be > 0");
  }
  if (!(cost > 0) || !std::isfinite(cost)) {
    throw std::invalid_argument("cost must be > 0");
  }
  if (!(tail_exponent >= 0) || !std::isfinite(tail_exponent)) {
    throw std::invalid_argument("tail_exponent must be >= 0");
  }
  if (!(registration_fee >= 0)) {
    throw std::invalid_argument("registration_fee must be >= 0");
  }
  if (bid_cap < 1) throw std::invalid_argument("bid_cap must be >= 1");
}

int PoissonRevenueModel::EffectiveCap() const {
  double by_value = std::floor(value / cost + 1e-12);
  return static_cast<int>(std::min<double>(bid_cap, by_value));
}

double PoissonRevenueModel::Rate(int bid) const {
  return value / cost * std::pow(1.0 + bid, -tail_exponent);
}

std::vector<double> PoissonRevenueModel::Rates() const {
  std::vector<double> rates;
  for (int b = 1; b <= EffectiveCap(); ++b) rates.push_back(Rate(b));
  return rates;
}

double UniqueProbability(double rate) { return rate * std::exp(-rate); }

double ExpectedMinUnique(const std::vector<double>& rates) {
  double expected = 0.0;
  double none_below = 1.0;
  for (size_t k = 0; k < rates.size(); ++k) {
    double p = UniqueProbability(rates[k]);
    expected += static_cast<double>(k + 1) * p * none_below;
    none_below *= 1.0 - p;
  }
  return expected;
}

double ExpectedMinUnique(const PoissonRevenueModel& model) {
  model.Validate();
  return ExpectedMinUnique(model.Rates());
}

double SubmissionFeeRevenue(const PoissonRevenueModel& model) {
  model.Validate();
  double total = 0.0;
  for (int b = 1; b <= model.EffectiveCap(); ++b) {
    total += model.value * std::pow(1.0 + b, -model.tail_exponent);
  }
  return total;
}

double ExpectedRevenue(const PoissonRevenueModel& model, int n_registrants) {
  return AllPayRevenue(model, n_registrants) + ExpectedMinUnique(model);
}

double AllPayRevenue(const PoissonRevenueModel& model, int n_registrants) {
  if (n_registrants < 0) {
    throw std::invalid_argument("n_registrants must be >= 0");
  }
  return n_registrants * model.registration_fee + SubmissionFeeRevenue(model) -
         model.value;
}

double AllPayGap(const PoissonRevenueModel& model, int n_registrants) {
  return ExpectedRevenue(model, n_registrants) -
         AllPayRevenue(model, n_registrants);
}

bool ProfitabilityCondition(const PoissonRevenueModel& model,
                            int n_registrants) {
  model.Validate();
  double sum = 0.0;
  for (int b = 1; b <= model.EffectiveCap(); ++b) {
    sum += std::pow(1.0 + b, -model.tail_exponent);
  }
  double rhs = 1.0 - (n_registrants * model.registration_fee +
                      ExpectedMinUnique(model)) /
                         model.value;
  return sum > rhs;
}

ProfitThreshold ProfitThresholdZ(const PoissonRevenueModel& model,
                                 int n_registrants, double z_min,
                                 double z_max, double tol) {
  if (!(z_min >= 0) || !(z_max > z_min)) {
    throw std::invalid_argument("need 0 <= z_min < z_max");
  }
  auto revenue = [&](double z) {
    PoissonRevenueModel m = model;
    m.tail_exponent = z;
    return ExpectedRevenue(m, n_registrants);
  };
  ProfitThreshold result;
  double lo = z_min, hi = z_max;
  double r_lo = revenue(lo), r_hi = revenue(hi);
  if (r_lo <= 0) {
    result.verdict = ThresholdVerdict::kNeverProfitable;
    result.z = lo;
    result.revenue_at_z = r_lo;
    return result;
  }
  if (r_hi > 0) {
    result.verdict = ThresholdVerdict::kAlwaysProfitable;
    result.z = hi;
    result.revenue_at_z = r_hi;
    return result;
  }
  double mid = 0.5 * (lo + hi);
  double r_mid = revenue(mid);
  for (int iter = 0; iter < 200 && std::abs(r_mid) > tol; ++iter) {
    if (r_mid > 0) {
      lo = mid;
    } else {
      hi = mid;
    }
    double next = 0.5 * (lo + hi);
    if (next == mid) break;
    mid = next;
    r_mid = revenue(mid);
  }
  result.z = mid;
  result.revenue_at_z = r_mid;
  return result;
}

std::vector<RevenuePoint> RevenueCurve(const PoissonRevenueModel& model,
                                       int n_registrants,
                                       const std::vector<double>& zs) {
  std::vector<RevenuePoint> curve;
  for (double z : zs) {
    PoissonRevenueModel m = model;
    m.tail_exponent = z;
    RevenuePoint point;
    point.z = z;
    point.fee_revenue = SubmissionFeeRevenue(m);
    point.expected_min_unique = ExpectedMinUnique(m);
    point.total = ExpectedRevenue(m, n_registrants);
    curve.push_back(point);
  }
  return curve;
}

std::string ToString(ThresholdVerdict verdict) {
  switch (verdict) {
    case ThresholdVerdict::kCrossing:
      return "crossing";
    case ThresholdVerdict::kAlwaysProfitable:
      return "always_profitable";
    case ThresholdVerdict::kNeverProfitable:
      return "never_profitable";
  }
  return "unknown";
}

}  // namespace luba
