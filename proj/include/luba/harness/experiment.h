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

#ifndef LUBA_HARNESS_EXPERIMENT_H_
#define LUBA_HARNESS_EXPERIMENT_H_

// Experiment specifications and their YAML / JSON file forms.
//
// Both formats share one layout:
//
//   scenario: two-bidder-prop4     # optional, registry name
//   auction:
//     bidders: 2
//     items: 1
//     registration_fee: 0
//     submission_cost: 1           # scalar or one entry per item
//     budget: 6                    # scalar or one entry per bidder
//     valuations: 8                # scalar, per-item list or n x m matrix
//     bid_cap: 6
//     risk: 0                      # scalar or one entry per bidder
//     resources: []                # per-item inventory, informational
//   learning:
//     algorithm: codipas           # codipas | monte-carlo
//     iterations: 5000
//     action_mode: prefix_sets     # full_subsets | prefix_sets | singletons
//     budget_mode: static          # static | ex_ante | depleting
//     alpha: 0.5
//     lambda: 0.1
//     epsilon: 1
//     update: power                # power | boltzmann
//     schedule: constant           # constant | harmonic
//     initial_estimates: uniform   # uniform | constant
//     initial_value: 0.0001
//     noise_std: 0
//     record_stride: 50
//     snapshots: []
//   run:
//     repeats: 20
//     seed: 0                      # repeat r uses seed + r unless seeds given
//     seeds: []
//     output: out
//     format: csv                  # csv | json
//   report:
//     percentiles: [5, 25, 50, 75, 95]
//     l1_to_analytic: true

#include <cstdint>
#include <string>
#include <vector>

#include "luba/simulation.h"

namespace luba {

struct ReportOptions {
  std::vector<double> percentiles = {5, 25, 50, 75, 95};
  bool l1_to_analytic = true;
  bool operator==(const ReportOptions&) const = default;
};

// Two bidders, one item, v = 8, c = 1, budget 6, CODIPAS with alpha = 0.5
// and lambda = 0.1 over prefix sets for 5000 iterations.
SimulationConfig DefaultSimulation();

struct ExperimentSpec {
  std::string scenario;  // empty for a plain learning run
  SimulationConfig simulation = DefaultSimulation();
  std::vector<double> resources;
  int repeats = 1;
  uint64_t seed = 0;
  std::vector<uint64_t> seeds;  // explicit per-repeat seeds
  std::string output = "out";
  std::string format = "csv";
  ReportOptions report;

  // Seeds for every repeat: `seeds` if given, else seed, seed+1, ...
  std::vector<uint64_t> RepeatSeeds() const;
  // Throws ConfigError naming the violated invariant.
  void Validate() const;

  bool operator==(const ExperimentSpec&) const = default;
};

// Parsers throw ConfigError with "<source>:<line>:<column>: <message>" for
// syntax errors, unknown keys and wrong types, and the invariant name for
// constraint violations. Documented defaults fill omitted keys.
ExperimentSpec ParseYamlSpec(const std::string& text,
                             const std::string& source = "<yaml>");
ExperimentSpec ParseJsonSpec(const std::string& text,
                             const std::string& source = "<json>");
// Picks the parser from the extension (.json or anything else as YAML).
ExperimentSpec LoadSpec(const std::string& path);

std::string EmitYamlSpec(const ExperimentSpec& spec);
std::string EmitJsonSpec(const ExperimentSpec& spec);

// Reads a whole file; throws ConfigError if it cannot be opened.
std::string ReadFile(const std::string& path);

}  // namespace luba

#endif  // LUBA_HARNESS_EXPERIMENT_H_
