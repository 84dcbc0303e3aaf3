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

#include "luba/harness/scenarios.h"

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "luba/equilibria.h"
#include "luba/errors.h"
#include "luba/revenue.h"

namespace luba {
namespace {

using Json = nlohmann::ordered_json;
namespace fs = std::filesystem;

constexpr char kVersion[] = "0.1.0";

// Collects output files under one directory.
class Output {
 public:
  Output(const ExperimentSpec& spec, bool enabled)
      : dir_(spec.output), enabled_(enabled && !spec.output.empty()) {
    if (!enabled_) return;
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec) {
      throw ConfigError("cannot create output directory '" + dir_ +
                        "': " + ec.message());
    }
  }

  void Write(const std::string& name,
             const std::function<void(std::ostream&)>& body) {
    if (!enabled_) return;
    std::string path = (fs::path(dir_) / name).string();
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write '" + path + "'");
    body(out);
    files_.push_back(path);
  }

  const std::vector<std::string>& files() const { return files_; }

 private:
  std::string dir_;
  bool enabled_;
  std::vector<std::string> files_;
};

std::string Timestamp() {
  std::time_t now = std::chrono::system_clock::to_time_t(
      std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buffer[32];
  std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buffer;
}

Json StrategyJson(const MixedStrategy& s) { return Json(s.probs()); }

ScenarioMetric Metric(std::string name, double value, std::string comparison,
                      double threshold) {
  ScenarioMetric m;
  m.name = std::move(name);
  m.value = value;
  m.threshold = threshold;
  m.comparison = comparison;
  if (comparison == "<=") m.passed = value <= threshold;
  if (comparison == "<") m.passed = value < threshold;
  if (comparison == ">=") m.passed = value >= threshold;
  if (comparison == ">") m.passed = value > threshold;
  if (comparison == "==") m.passed = value == threshold;
  return m;
}

Json SpecJson(const ExperimentSpec& spec) {
  return Json::parse(EmitJsonSpec(spec));
}

ScenarioResult Finalize(const ExperimentSpec& spec, ScenarioMetric metric,
                        Json results, Output& output) {
  ScenarioResult result;
  result.metric = metric;
  Json summary;
  summary["schema_version"] = kSummarySchemaVersion;
  summary["scenario"] = spec.scenario;
  summary["spec"] = SpecJson(spec);
  summary["seeds"] = spec.RepeatSeeds();
  summary["metric"] = {{"name", metric.name},
                       {"value", metric.value},
                       {"comparison", metric.comparison},
                       {"threshold", metric.threshold},
                       {"passed", metric.passed}};
  summary["results"] = std::move(results);
  Json files = Json::array();
  for (const auto& f : output.files()) {
    files.push_back(fs::path(f).filename().string());
  }
  files.push_back("summary.json");
  summary["files"] = files;
  summary["metadata"] = {{"timestamp", Timestamp()}, {"version", kVersion}};
  output.Write("summary.json",
               [&](std::ostream& out) { out << summary.dump(2) << '\n'; });
  result.summary = std::move(summary);
  result.files = output.files();
  return result;
}

std::vector<Trajectory> RunRepeats(const SimulationConfig& base,
                                   const std::vector<uint64_t>& seeds) {
  return ParallelMap<Trajectory>(
      static_cast<int>(seeds.size()), [&](int r) {
        SimulationConfig config = base;
        config.seed = seeds[r];
        return RunSimulation(config);
      });
}

void WriteTrajectories(const ExperimentSpec& spec,
                       const std::vector<Trajectory>& runs,
                       const std::vector<uint64_t>& seeds,
                       const std::string& prefix, Output& output) {
  for (size_t r = 0; r < runs.size(); ++r) {
    std::string stem = prefix + "trajectory_seed" + std::to_string(seeds[r]);
    if (spec.format == "json") {
      output.Write(stem + ".json", [&](std::ostream& out) {
        WriteTrajectoryJson(runs[r], out);
      });
    } else {
      output.Write(stem + ".csv", [&](std::ostream& out) {
        WriteTrajectoryCsv(runs[r], out);
      });
    }
  }
}

void WriteActions(const Trajectory& run, Output& output) {
  output.Write("actions.csv", [&](std::ostream& out) {
    out << "bidder,item,action_id,bids\n";
    for (int j = 0; j < run.num_bidders; ++j) {
      for (int i = 0; i < run.num_items; ++i) {
        const auto& space = run.action_spaces[j][i];
        for (size_t a = 0; a < space.size(); ++a) {
          out << j << ',' << i << ',' << a << ",\"" << space[a].ToString()
              << "\"\n";
        }
      }
    }
  });
}

Json SummaryStats(const std::vector<double>& values,
                  const std::vector<double>& percentiles) {
  Json stats;
  for (double p : percentiles) {
    stats["p" + FormatDouble(p)] = Percentile(values, p);
  }
  return stats;
}

// ---------------------------------------------------------------------------

ScenarioResult TwoBidderPrefix(const ExperimentSpec& spec, Output& output) {
  const SimulationConfig& sim = spec.simulation;
  const AuctionConfig& a = sim.auction;
  if (a.num_items != 1) throw ConfigError("two-bidder-prop4 needs one item");
  double v = a.Value(0, 0);
  double c = a.submission_costs[0];
  int b_max = ReduceActionSpace(a, 0, 0).max_bid;
  MixedStrategy eq = TwoBidderEquilibrium(v, c, b_max);
  auto seeds = spec.RepeatSeeds();
  auto runs = RunRepeats(sim, seeds);
  std::vector<double> l1;
  Json per_seed = Json::array();
  for (size_t r = 0; r < runs.size(); ++r) {
    const auto& space = runs[r].action_spaces[0][0];
    if (space.size() != static_cast<size_t>(eq.size())) {
      throw ConfigError(
          "two-bidder-prop4 needs prefix_sets actions up to the reduced "
          "max bid");
    }
    double d = MeanFinalL1(runs[r], eq.probs());
    l1.push_back(d);
    Json entry = {{"seed", seeds[r]}, {"l1", d}};
    Json finals = Json::array();
    for (const auto& bidder : runs[r].final_strategies) {
      finals.push_back(bidder[0]);
    }
    entry["final_strategies"] = finals;
    per_seed.push_back(entry);
  }
  WriteActions(runs.front(), output);
  WriteTrajectories(spec, runs, seeds, "", output);
  double median = Median(l1);
  Json results;
  results["analytic_equilibrium"] = StrategyJson(eq);
  results["l1_to_analytic"] = SummaryStats(l1, spec.report.percentiles);
  results["median_l1"] = median;
  results["per_seed"] = per_seed;
  return Finalize(spec, Metric("median_l1_to_analytic", median, "<=", 0.1),
                  results, output);
}

ScenarioResult AsymmetricTwoBidder(const ExperimentSpec& spec,
                                   Output& output) {
  const SimulationConfig& sim = spec.simulation;
  double v = sim.auction.Value(0, 0);
  double c = sim.auction.submission_costs[0];
  StrategyPair eq = AsymmetricTwoBidderEquilibrium(v, c);
  LubaGame game = AsymmetricTwoBidderGame(v, c);
  auto cert = VerifyEquilibrium(game, {eq.first, eq.second});
  // Indifference residual over the support actions each closed form targets:
  // all three actions of bidder 1, and the participating actions of bidder 2.
  auto spread = [](const std::vector<double>& xs) {
    auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
    return *hi - *lo;
  };
  std::vector<double> b2(cert.action_payoffs[1].begin() + 1,
                         cert.action_payoffs[1].end());
  double residual = std::max(spread(cert.action_payoffs[0]), spread(b2));

  auto seeds = spec.RepeatSeeds();
  auto runs = RunRepeats(sim, seeds);
  Json learned = Json::array();
  for (size_t r = 0; r < runs.size(); ++r) {
    Json entry = {{"seed", seeds[r]}};
    Json finals = Json::array();
    for (const auto& bidder : runs[r].final_strategies) {
      finals.push_back(bidder[0]);
    }
    entry["final_strategies"] = finals;
    learned.push_back(entry);
  }
  WriteActions(runs.front(), output);
  WriteTrajectories(spec, runs, seeds, "", output);
  Json results;
  results["x"] = StrategyJson(eq.first);
  results["y"] = StrategyJson(eq.second);
  results["action_payoffs"] = cert.action_payoffs;
  results["max_regret"] = cert.max_regret;
  results["indifference_residual"] = residual;
  results["learned"] = learned;
  return Finalize(spec, Metric("indifference_residual", residual, "<=", 1e-9),
                  results, output);
}

ScenarioResult ThreeBidderPure(const ExperimentSpec& spec, Output& output) {
  const SimulationConfig& sim = spec.simulation;
  const AuctionConfig& a = sim.auction;
  if (a.num_bidders != 3 || a.num_items != 1) {
    throw ConfigError("three-bidder-pure needs three bidders and one item");
  }
  LubaGame game =
      LubaGame::FromConfig(a, ActionMode::kFullSubsets, BudgetFilter::kExAnte);
  auto equilibria = PureEquilibria(game);
  std::vector<int> target = {game.IndexOf(0, {ActionSet{1}}),
                             game.IndexOf(1, {ActionSet{}}),
                             game.IndexOf(2, {ActionSet{}})};
  bool found = false;
  Json eq_list = Json::array();
  for (const auto& eq : equilibria) {
    eq_list.push_back(game.Profile(eq).ToString());
    found = found || eq == target;
  }
  Json spaces = Json::array();
  for (int j = 0; j < 3; ++j) {
    Json names = Json::array();
    for (int k = 0; k < game.NumActions(j); ++k) {
      names.push_back(game.ActionName(j, k));
    }
    spaces.push_back(names);
  }

  auto seeds = spec.RepeatSeeds();
  auto runs = RunRepeats(sim, seeds);
  std::vector<double> mass;
  for (const Trajectory& run : runs) {
    double p = 1.0;
    for (int j = 0; j < 3; ++j) {
      const auto& space = run.action_spaces[j][0];
      const ActionSet want = j == 0 ? ActionSet{1} : ActionSet{};
      auto it = std::find(space.begin(), space.end(), want);
      p *= it == space.end() ? 0.0
                             : run.final_strategies[j][0][it - space.begin()];
    }
    mass.push_back(p);
  }
  WriteActions(runs.front(), output);
  WriteTrajectories(spec, runs, seeds, "", output);
  Json results;
  results["action_spaces"] = spaces;
  results["pure_equilibria"] = eq_list;
  results["contains_1_empty_empty"] = found;
  results["learned_mass_on_1_empty_empty"] = mass;
  results["median_learned_mass"] = Median(mass);
  return Finalize(spec,
                  Metric("pure_equilibrium_found", found ? 1.0 : 0.0, "==",
                         1.0),
                  results, output);
}

ScenarioResult FourBidderTwoItem(const ExperimentSpec& spec, Output& output) {
  const SimulationConfig& sim = spec.simulation;
  auto seeds = spec.RepeatSeeds();
  auto runs = RunRepeats(sim, seeds);
  WriteActions(runs.front(), output);
  WriteTrajectories(spec, runs, seeds, "", output);
  double worst = 0.0;
  Json per_seed = Json::array();
  for (size_t r = 0; r < runs.size(); ++r) {
    const Trajectory& run = runs[r];
    for (const auto& bidder : run.final_strategies) {
      for (const auto& cell : bidder) {
        double sum = 0.0;
        for (double p : cell) sum += p;
        worst = std::max(worst, std::abs(sum - 1.0));
      }
    }
    Json snapshots = Json::array();
    for (const Snapshot& snap : run.snapshots) {
      snapshots.push_back({{"iteration", snap.iteration},
                           {"strategies", snap.strategies}});
    }
    per_seed.push_back({{"seed", seeds[r]},
                        {"remaining_budget", run.remaining_budget},
                        {"rejections", run.rejections},
                        {"snapshots", snapshots}});
  }
  Json results;
  results["resources"] = spec.resources;
  results["per_seed"] = per_seed;
  return Finalize(spec, Metric("max_normalization_error", worst, "<=", 1e-10),
                  results, output);
}

ScenarioResult ParamImpact(const ExperimentSpec& spec, Output& output) {
  constexpr double kThreshold = 1e-3;
  auto seeds = spec.RepeatSeeds();
  struct Setting {
    std::string label;
    double rate;
  };
  std::vector<Setting> settings = {{"rate_0.1", 0.1}, {"rate_1", 1.0}};
  Json results;
  std::vector<int> reach;
  for (const Setting& setting : settings) {
    SimulationConfig sim = spec.simulation;
    sim.params.alpha = setting.rate;
    sim.params.lambda = setting.rate;
    auto runs = RunRepeats(sim, seeds);
    int length = sim.iterations;
    std::vector<std::vector<double>> bands(spec.report.percentiles.size(),
                                           std::vector<double>(length));
    std::vector<double> median(length);
    for (int t = 0; t < length; ++t) {
      std::vector<double> column;
      for (const Trajectory& run : runs) column.push_back(run.rmse[t]);
      for (size_t p = 0; p < bands.size(); ++p) {
        bands[p][t] = Percentile(column, spec.report.percentiles[p]);
      }
      median[t] = Median(column);
    }
    int first = FirstSustainedBelow(median, kThreshold);
    reach.push_back(first == 0 ? std::numeric_limits<int>::max() : first);
    output.Write("rmse_" + setting.label + ".csv", [&](std::ostream& out) {
      out << "iteration,median";
      for (double p : spec.report.percentiles) out << ",p" << FormatDouble(p);
      out << '\n';
      for (int t = 0; t < length; ++t) {
        out << t + 1 << ',' << FormatDouble(median[t]);
        for (const auto& band : bands) out << ',' << FormatDouble(band[t]);
        out << '\n';
      }
    });
    std::vector<double> final_rmse;
    for (const Trajectory& run : runs) final_rmse.push_back(run.rmse.back());
    results[setting.label] = {
        {"alpha", setting.rate},
        {"lambda", setting.rate},
        {"first_iteration_median_below", first},
        {"final_rmse", SummaryStats(final_rmse, spec.report.percentiles)}};
  }
  results["threshold"] = kThreshold;
  results["repeats"] = seeds.size();
  // Positive when the large-rate runs settle strictly earlier.
  double advantage = reach[0] == std::numeric_limits<int>::max() &&
                             reach[1] == std::numeric_limits<int>::max()
                         ? 0.0
                         : static_cast<double>(reach[0]) - reach[1];
  return Finalize(spec, Metric("iterations_saved_by_rate_1", advantage, ">", 0),
                  results, output);
}

ScenarioResult RiskSweep(const ExperimentSpec& spec, Output& output) {
  const double c = spec.simulation.auction.submission_costs[0];
  const std::vector<double> thetas = {-0.2, 0.0, 0.2};
  std::vector<double> vs;
  for (double v = 2.5; v <= 20.0 + 1e-9; v += 0.5) vs.push_back(v);
  bool ordered = true;
  output.Write("participation.csv", [&](std::ostream& out) {
    out << "theta,v,two_by_two_participation,two_bidder_participation\n";
    for (double theta : thetas) {
      for (double v : vs) {
        double p22 = TwoByTwoRiskEquilibrium(v, theta, theta).first[1];
        int b_max = static_cast<int>(std::ceil(v));
        double p2 =
            1.0 - RiskSensitiveTwoBidderEquilibrium(v, c, theta, b_max)[0];
        out << FormatDouble(theta) << ',' << FormatDouble(v) << ','
            << FormatDouble(p22) << ',' << FormatDouble(p2) << '\n';
      }
    }
  });
  Json ordering = Json::array();
  for (double v : vs) {
    double low = TwoByTwoRiskEquilibrium(v, -0.2, -0.2).first[1];
    double mid = TwoByTwoRiskEquilibrium(v, 0.0, 0.0).first[1];
    double high = TwoByTwoRiskEquilibrium(v, 0.2, 0.2).first[1];
    bool ok = high > mid && mid > low;
    ordered = ordered && ok;
    ordering.push_back({{"v", v}, {"theta_-0.2", low}, {"theta_0", mid},
                        {"theta_0.2", high}});
  }
  Json three = Json::array();
  output.Write("three_bidder.csv", [&](std::ostream& out) {
    out << "v,x_empty,x_1,x_2,x_12\n";
    for (double v : vs) {
      try {
        MixedStrategy x = ThreeBidderSymmetricEquilibrium(v, c);
        out << FormatDouble(v);
        for (double p : x.probs()) out << ',' << FormatDouble(p);
        out << '\n';
        three.push_back({{"v", v}, {"x", x.probs()}});
      } catch (const std::invalid_argument&) {
        // Outside the closed form's feasible range.
      }
    }
  });
  Json results;
  results["two_by_two"] = ordering;
  results["three_bidder"] = three;
  return Finalize(spec,
                  Metric("participation_ordered_by_theta", ordered ? 1 : 0,
                         "==", 1),
                  results, output);
}

ScenarioResult McVsCodipas(const ExperimentSpec& spec, Output& output) {
  SimulationConfig codipas = spec.simulation;
  codipas.algorithm = Algorithm::kCodipas;
  SimulationConfig mc = spec.simulation;
  mc.algorithm = Algorithm::kMonteCarlo;
  auto seeds = spec.RepeatSeeds();
  auto co_runs = RunRepeats(codipas, seeds);
  auto mc_runs = RunRepeats(mc, seeds);
  int max_bid = ReduceActionSpace(spec.simulation.auction, 0, 0).max_bid;
  int window = std::max(1, spec.simulation.iterations / 5);
  auto pooled = [&](const std::vector<Trajectory>& runs) {
    std::vector<double> freq(max_bid, 0.0);
    for (const Trajectory& run : runs) {
      auto f = BidFrequencies(run, max_bid, window);
      for (int b = 0; b < max_bid; ++b) freq[b] += f[b] / runs.size();
    }
    return freq;
  };
  std::vector<double> f_co = pooled(co_runs);
  std::vector<double> f_mc = pooled(mc_runs);
  double tv = TotalVariation(f_co, f_mc);
  Json per_seed = Json::array();
  for (size_t r = 0; r < seeds.size(); ++r) {
    auto a = BidFrequencies(co_runs[r], max_bid, window);
    auto b = BidFrequencies(mc_runs[r], max_bid, window);
    per_seed.push_back({{"seed", seeds[r]}, {"tv", TotalVariation(a, b)}});
  }
  output.Write("bid_frequencies.csv", [&](std::ostream& out) {
    out << "bid,codipas,monte_carlo\n";
    for (int b = 0; b < max_bid; ++b) {
      out << b + 1 << ',' << FormatDouble(f_co[b]) << ','
          << FormatDouble(f_mc[b]) << '\n';
    }
  });
  WriteTrajectories(spec, co_runs, seeds, "codipas_", output);
  WriteTrajectories(spec, mc_runs, seeds, "monte_carlo_", output);
  Json results;
  results["window"] = window;
  results["codipas_frequencies"] = f_co;
  results["monte_carlo_frequencies"] = f_mc;
  results["total_variation"] = tv;
  results["per_seed"] = per_seed;
  return Finalize(spec, Metric("total_variation", tv, "<=", 0.15), results,
                  output);
}

ScenarioResult RevenueZ(const ExperimentSpec& spec, Output& output) {
  const AuctionConfig& a = spec.simulation.auction;
  PoissonRevenueModel model;
  model.value = a.Value(0, 0);
  model.cost = a.submission_costs[0];
  model.registration_fee = a.registration_fee;
  model.bid_cap = a.bid_cap;
  int n = a.num_bidders;
  std::vector<double> zs;
  for (int k = 0; k <= 500; ++k) zs.push_back(k * 0.01);
  auto curve = RevenueCurve(model, n, zs);
  output.Write("revenue_z.csv", [&](std::ostream& out) {
    out << "z,fee_revenue,expected_min_unique,total\n";
    for (const RevenuePoint& p : curve) {
      out << FormatDouble(p.z) << ',' << FormatDouble(p.fee_revenue) << ','
          << FormatDouble(p.expected_min_unique) << ','
          << FormatDouble(p.total) << '\n';
    }
  });
  ProfitThreshold threshold = ProfitThresholdZ(model, n);
  int disagreements = 0;
  for (int k = 0; k <= 5000; ++k) {
    PoissonRevenueModel m = model;
    m.tail_exponent = k * 1e-3;
    bool positive = ExpectedRevenue(m, n) > 0;
    if (positive != ProfitabilityCondition(m, n)) ++disagreements;
  }
  Json results;
  results["model"] = {{"value", model.value},
                      {"cost", model.cost},
                      {"registration_fee", model.registration_fee},
                      {"bid_cap", model.EffectiveCap()},
                      {"n_registrants", n}};
  results["threshold"] = {{"verdict", ToString(threshold.verdict)},
                          {"z", threshold.z},
                          {"revenue_at_z", threshold.revenue_at_z}};
  results["verdict_disagreements"] = disagreements;
  return Finalize(spec, Metric("verdict_disagreements", disagreements, "==", 0),
                  results, output);
}

using Runner = ScenarioResult (*)(const ExperimentSpec&, Output&);

struct Entry {
  ScenarioInfo info;
  Runner run;
  ExperimentSpec (*defaults)();
};

ExperimentSpec Base(const std::string& name) {
  ExperimentSpec spec;
  spec.scenario = name;
  spec.output = "out/" + name;
  return spec;
}

ExperimentSpec TwoBidderDefaults() {
  ExperimentSpec spec = Base("two-bidder-prop4");
  spec.repeats = 20;
  return spec;
}

ExperimentSpec AsymDefaults() {
  ExperimentSpec spec = Base("asym-two-bidder");
  AuctionConfig& a = spec.simulation.auction;
  a.budgets = {2, 3};
  a.bid_cap = 3;
  spec.repeats = 5;
  return spec;
}

ExperimentSpec ThreeBidderDefaults() {
  ExperimentSpec spec = Base("three-bidder-pure");
  spec.simulation.auction = AuctionConfig::Symmetric(3, 1, 6, 1, 1, 3, 5);
  spec.simulation.auction.budgets = {5, 3, 3};
  spec.simulation.action_mode = ActionMode::kFullSubsets;
  spec.simulation.budget_mode = BudgetMode::kExAnte;
  spec.repeats = 5;
  return spec;
}

ExperimentSpec FourBidderDefaults() {
  ExperimentSpec spec = Base("four-bidder-two-item");
  AuctionConfig a = AuctionConfig::Symmetric(4, 2, 1, 1, 0, 1, 110);
  a.budgets = {100, 120, 80, 90};
  a.valuations = {{40, 102}, {42, 109}, {38, 100}, {36, 110}};
  SimulationConfig& sim = spec.simulation;
  sim.auction = a;
  sim.iterations = 2000;
  sim.budget_mode = BudgetMode::kDepleting;
  sim.params.alpha = 0.001;
  sim.params.lambda = 0.01;
  sim.initial_estimates = InitialEstimates::kConstant;
  sim.initial_value = 1e-4;
  sim.record_stride = 0;
  sim.snapshot_iterations = {1, 1000, 1800, 2000};
  spec.resources = {2000, 1500};
  return spec;
}

ExperimentSpec ParamImpactDefaults() {
  ExperimentSpec spec = Base("param-impact");
  spec.simulation.iterations = 2000;
  spec.simulation.record_stride = 0;
  spec.simulation.params.alpha = 0.1;
  spec.simulation.params.lambda = 0.1;
  spec.repeats = 110;
  return spec;
}

ExperimentSpec RiskSweepDefaults() { return Base("risk-sweep"); }

ExperimentSpec McVsCodipasDefaults() {
  ExperimentSpec spec = Base("mc-vs-codipas");
  SimulationConfig& sim = spec.simulation;
  sim.auction = AuctionConfig::Symmetric(10, 1, 10, 1, 0, 10, 10);
  sim.action_mode = ActionMode::kSingletons;
  sim.params.alpha = 0.05;
  sim.params.lambda = 0.05;
  sim.iterations = 5000;
  sim.record_stride = 500;
  spec.repeats = 5;
  return spec;
}

ExperimentSpec RevenueDefaults() {
  ExperimentSpec spec = Base("revenue-z");
  spec.simulation.auction = AuctionConfig::Symmetric(5, 1, 10, 1, 1, 10, 10);
  return spec;
}

const std::vector<Entry>& Entries() {
  static const std::vector<Entry> entries = {
      {{"two-bidder-prop4",
        "Two bidders, one item, static budget: CODIPAS vs the analytic "
        "prefix-set equilibrium"},
       &TwoBidderPrefix,
       &TwoBidderDefaults},
      {{"asym-two-bidder",
        "Two bidders with prefix actions of length <= 2 and <= 3: closed "
        "form, regret and learned play"},
       &AsymmetricTwoBidder,
       &AsymDefaults},
      {{"three-bidder-pure",
        "Three bidders with budgets (5,3,3): pure equilibria and learned mass "
        "on ({1},{},{})"},
       &ThreeBidderPure,
       &ThreeBidderDefaults},
      {{"four-bidder-two-item",
        "Four bidders, two items, depleting budgets: strategy snapshots"},
       &FourBidderTwoItem,
       &FourBidderDefaults},
      {{"param-impact",
        "RMSE percentiles for alpha = lambda = 0.1 vs 1 over seeded repeats"},
       &ParamImpact,
       &ParamImpactDefaults},
      {{"risk-sweep",
        "Participation vs valuation for theta in {-0.2, 0, 0.2} and the "
        "three-bidder closed form"},
       &RiskSweep,
       &RiskSweepDefaults},
      {{"mc-vs-codipas",
        "Ten bidders, single bids up to 10: Monte-Carlo vs CODIPAS bid "
        "frequencies"},
       &McVsCodipas,
       &McVsCodipasDefaults},
      {{"revenue-z",
        "Expected seller revenue vs tail exponent z and the profit "
        "threshold"},
       &RevenueZ,
       &RevenueDefaults},
  };
  return entries;
}

const Entry& Find(const std::string& name) {
  for (const Entry& e : Entries()) {
    if (e.info.name == name) return e;
  }
  std::string options;
  for (const Entry& e : Entries()) {
    options += options.empty() ? "" : ", ";
    options += e.info.name;
  }
  throw ConfigError("unknown scenario '" + name + "' (known: " + options +
                    ")");
}

}  // namespace

const std::vector<ScenarioInfo>& ScenarioRegistry() {
  static const std::vector<ScenarioInfo> infos = [] {
    std::vector<ScenarioInfo> out;
    for (const Entry& e : Entries()) out.push_back(e.info);
    return out;
  }();
  return infos;
}

bool IsKnownScenario(const std::string& name) {
  for (const Entry& e : Entries()) {
    if (e.info.name == name) return true;
  }
  return false;
}

ExperimentSpec ScenarioSpec(const std::string& name) {
  ExperimentSpec spec = Find(name).defaults();
  spec.simulation.seed = spec.RepeatSeeds().front();
  return spec;
}

ScenarioResult RunScenario(const ExperimentSpec& spec, bool write_files) {
  if (spec.scenario.empty()) return RunLearning(spec, write_files);
  const Entry& entry = Find(spec.scenario);
  spec.Validate();
  Output output(spec, write_files);
  return entry.run(spec, output);
}

ScenarioResult RunLearning(const ExperimentSpec& spec, bool write_files) {
  spec.Validate();
  Output output(spec, write_files);
  auto seeds = spec.RepeatSeeds();
  auto runs = RunRepeats(spec.simulation, seeds);
  WriteActions(runs.front(), output);
  WriteTrajectories(spec, runs, seeds, "", output);
  std::vector<double> final_rmse;
  Json per_seed = Json::array();
  for (size_t r = 0; r < runs.size(); ++r) {
    final_rmse.push_back(runs[r].rmse.back());
    per_seed.push_back({{"seed", seeds[r]},
                        {"final_strategies", runs[r].final_strategies},
                        {"final_rmse", runs[r].rmse.back()},
                        {"rejections", runs[r].rejections}});
  }
  Json results;
  results["final_rmse"] = SummaryStats(final_rmse, spec.report.percentiles);
  results["per_seed"] = per_seed;
  ExperimentSpec named = spec;
  named.scenario = "";
  return Finalize(named,
                  Metric("median_final_rmse", Median(final_rmse), ">=", 0),
                  results, output);
}

double Percentile(std::vector<double> values, double p) {
  if (values.empty()) throw std::invalid_argument("no values");
  std::sort(values.begin(), values.end());
  double rank = p / 100.0 * (values.size() - 1);
  size_t lo = static_cast<size_t>(std::floor(rank));
  size_t hi = std::min(lo + 1, values.size() - 1);
  double frac = rank - lo;
  return values[lo] + frac * (values[hi] - values[lo]);
}

double Median(std::vector<double> values) {
  return Percentile(std::move(values), 50.0);
}

double MeanFinalL1(const Trajectory& trajectory,
                   std::span<const double> target) {
  double total = 0.0;
  for (const auto& bidder : trajectory.final_strategies) {
    const auto& s = bidder[0];
    if (s.size() != target.size()) {
      throw std::invalid_argument("strategy length does not match target");
    }
    for (size_t a = 0; a < s.size(); ++a) total += std::abs(s[a] - target[a]);
  }
  return total / trajectory.final_strategies.size();
}

std::vector<double> BidFrequencies(const Trajectory& trajectory, int max_bid,
                                   int window) {
  std::vector<double> freq(max_bid, 0.0);
  double count = 0.0;
  int start = std::max(0, trajectory.length() - window);
  for (int t = start; t < trajectory.length(); ++t) {
    for (int j = 0; j < trajectory.num_bidders; ++j) {
      for (int b : trajectory.Action(t, j, 0).bids()) {
        if (b >= 1 && b <= max_bid) {
          freq[b - 1] += 1.0;
          count += 1.0;
        }
      }
    }
  }
  if (count > 0) {
    for (double& f : freq) f /= count;
  }
  return freq;
}

double TotalVariation(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw std::invalid_argument("length mismatch");
  double d = 0.0;
  for (size_t k = 0; k < p.size(); ++k) d += std::abs(p[k] - q[k]);
  return 0.5 * d;
}

int FirstSustainedBelow(std::span<const double> series, double threshold) {
  int first = 0;
  for (int t = static_cast<int>(series.size()); t-- > 0;) {
    if (!(series[t] < threshold)) break;
    first = t + 1;
  }
  return first;
}

void WriteTrajectoryJson(const Trajectory& trajectory, std::ostream& out) {
  Json json;
  json["num_bidders"] = trajectory.num_bidders;
  json["num_items"] = trajectory.num_items;
  json["rmse"] = trajectory.rmse;
  json["actions"] = trajectory.actions;
  json["payoffs"] = trajectory.payoffs;
  json["winners"] = trajectory.winners;
  Json snapshots = Json::array();
  for (const Snapshot& snap : trajectory.snapshots) {
    snapshots.push_back(
        {{"iteration", snap.iteration}, {"strategies", snap.strategies}});
  }
  json["snapshots"] = snapshots;
  json["remaining_budget"] = trajectory.remaining_budget;
  json["rejections"] = trajectory.rejections;
  out << json.dump() << '\n';
}

}  // namespace luba
