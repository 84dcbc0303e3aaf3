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

#ifndef LUBA_HARNESS_SCENARIOS_H_
#define LUBA_HARNESS_SCENARIOS_H_

// Named experiment reproductions. Each scenario writes its raw data as CSV
// into the spec's output directory and returns a versioned JSON summary with
// one headline metric.

#include <algorithm>
#include <atomic>
#include <functional>
#include <nlohmann/json.hpp>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "luba/harness/experiment.h"
#include "luba/simulation.h"

namespace luba {

inline constexpr int kSummarySchemaVersion = 1;

struct ScenarioInfo {
  std::string name;
  std::string description;
};

const std::vector<ScenarioInfo>& ScenarioRegistry();
bool IsKnownScenario(const std::string& name);

// Default spec of a registered scenario; throws ConfigError otherwise.
ExperimentSpec ScenarioSpec(const std::string& name);

struct ScenarioMetric {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  std::string comparison;  // "<=", "<", ">=", ">" or "=="
  bool passed = false;
};

struct ScenarioResult {
  nlohmann::ordered_json summary;
  ScenarioMetric metric;
  std::vector<std::string> files;  // paths written, in order
};

// Runs spec.scenario. Files go to spec.output unless write_files is false.
// Deterministic given the spec except summary["metadata"].
ScenarioResult RunScenario(const ExperimentSpec& spec,
                           bool write_files = true);

// Runs a plain learning experiment (no scenario name) for every repeat
// seed and writes one trajectory file per repeat.
ScenarioResult RunLearning(const ExperimentSpec& spec,
                           bool write_files = true);

// ---------------------------------------------------------------------------
// Aggregation helpers shared with the tests.

// Linear interpolation between order statistics; p in [0, 100].
double Percentile(std::vector<double> values, double p);
double Median(std::vector<double> values);

// Evaluates fn(0..count-1) on worker threads; results keep index order.
template <typename T>
std::vector<T> ParallelMap(int count, const std::function<T(int)>& fn);

// Mean over bidders of the L1 distance between the final strategy on item 0
// and `target`.
double MeanFinalL1(const Trajectory& trajectory,
                   std::span<const double> target);

// Relative frequency of each single bid 1..max_bid among the bids placed on
// item 0 in the last `window` iterations.
std::vector<double> BidFrequencies(const Trajectory& trajectory, int max_bid,
                                   int window);

double TotalVariation(std::span<const double> p, std::span<const double> q);

// First iteration (1-based) from which every later value is below
// `threshold`; 0 if the series never settles.
int FirstSustainedBelow(std::span<const double> series, double threshold);

void WriteTrajectoryJson(const Trajectory& trajectory, std::ostream& out);

template <typename T>
std::vector<T> ParallelMap(int count, const std::function<T(int)>& fn) {
  if (count <= 0) return {};
  std::vector<std::optional<T>> slots(count);
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  auto work = [&]() {
    for (int k = next++; k < count && !failed; k = next++) {
      try {
        slots[k] = fn(k);
      } catch (...) {
        if (!failed.exchange(true)) error = std::current_exception();
      }
    }
  };
  int workers = std::clamp<int>(std::thread::hardware_concurrency(), 1, count);
  std::vector<std::thread> threads;
  for (int w = 1; w < workers; ++w) threads.emplace_back(work);
  work();
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);
  std::vector<T> out;
  out.reserve(count);
  for (auto& slot : slots) out.push_back(std::move(*slot));
  return out;
}

}  // namespace luba

#endif  // LUBA_HARNESS_SCENARIOS_H_
