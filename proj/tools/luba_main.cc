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

// Command line front end: one-shot auctions, equilibrium solvers, learning
// runs, revenue sweeps and named scenarios.

#include <yaml-cpp/yaml.h>

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "luba/auction.h"
#include "luba/equilibria.h"
#include "luba/errors.h"
#include "luba/harness/experiment.h"
#include "luba/harness/scenarios.h"
#include "luba/revenue.h"

namespace {

using Json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitCap = 3;
constexpr int kExitCheck = 4;

struct Options {
  std::string config;
  std::optional<uint64_t> seed;
  std::optional<int> repeats;
  std::string out;
  std::string scenario;
  std::string algorithm;
  std::string format;
  bool check = false;

  // Solver and revenue parameters.
  std::string kind = "two-bidder";
  std::string profile;
  double v = 8.0;
  double c = 1.0;
  double cr = 0.0;
  double theta = 0.0;
  double theta2 = 0.0;
  int b_max = 0;
  int bidders = 2;
  int bid_cap = 10;
  double z_min = 0.0;
  double z_max = 5.0;
  double z_step = 0.01;
  std::string mode = "full_subsets";
};

void AddRunFlags(CLI::App* cmd, Options& o) {
  cmd->add_option("--config", o.config, "YAML or JSON experiment file");
  cmd->add_option("--seed", o.seed, "Base seed");
  cmd->add_option("--repeats", o.repeats, "Number of repeats")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--out", o.out, "Output directory");
  cmd->add_option("--algorithm", o.algorithm, "codipas | monte-carlo");
  cmd->add_option("--format", o.format, "csv | json");
  cmd->add_flag("--check", o.check,
                "Exit with 4 when the headline metric fails");
}

void AddGameFlags(CLI::App* cmd, Options& o) {
  cmd->add_option("--kind", o.kind,
                  "two-bidder | risk-two-bidder | asymmetric | two-by-two | "
                  "three-bidder | pure | global-optimum");
  cmd->add_option("--v", o.v, "Valuation");
  cmd->add_option("--c", o.c, "Submission cost");
  cmd->add_option("--theta", o.theta, "Risk index (first bidder)");
  cmd->add_option("--theta2", o.theta2, "Risk index of the second bidder");
  cmd->add_option("--b-max", o.b_max, "Largest bid (0: ceil(v))");
  cmd->add_option("--config", o.config, "Auction file for pure / optimum");
  cmd->add_option("--mode", o.mode, "full_subsets | prefix_sets | singletons");
  cmd->add_flag("--check", o.check, "Exit with 4 when not certified");
}

void ApplyOverrides(luba::ExperimentSpec& spec, const Options& o) {
  if (o.seed) {
    spec.seed = *o.seed;
    spec.seeds.clear();
  }
  if (o.repeats) {
    spec.repeats = *o.repeats;
    if (!spec.seeds.empty()) spec.seeds.clear();
  }
  if (!o.out.empty()) spec.output = o.out;
  if (!o.algorithm.empty()) {
    spec.simulation.algorithm = luba::ParseAlgorithm(o.algorithm);
  }
  if (!o.format.empty()) spec.format = o.format;
  spec.Validate();
  spec.simulation.seed = spec.RepeatSeeds().front();
}

Json CertificateJson(const luba::EquilibriumCertificate& cert) {
  Json strategies = Json::array();
  for (const auto& s : cert.strategies) strategies.push_back(s.probs());
  return {{"strategies", strategies},
          {"max_regret", cert.max_regret},
          {"equilibrium_payoffs", cert.equilibrium_payoffs},
          {"action_payoffs", cert.action_payoffs},
          {"certified", cert.certified}};
}

int BMax(const Options& o) {
  return o.b_max > 0 ? o.b_max : static_cast<int>(std::ceil(o.v));
}

// Builds the closed-form equilibrium of `o.kind` and the game it solves.
struct Solved {
  std::vector<luba::MixedStrategy> strategies;
  std::optional<luba::LubaGame> luba_game;
  std::optional<luba::TabularGame> tabular_game;
  const luba::NormalFormGame& game() const {
    if (luba_game) return *luba_game;
    return *tabular_game;
  }
};

Solved SolveClosedForm(const Options& o) {
  Solved out;
  if (o.kind == "two-bidder") {
    auto x = luba::TwoBidderEquilibrium(o.v, o.c, BMax(o));
    out.strategies = {x, x};
    out.luba_game = luba::TwoBidderPrefixGame(o.v, o.c, BMax(o));
  } else if (o.kind == "risk-two-bidder") {
    auto x = luba::RiskSensitiveTwoBidderEquilibrium(o.v, o.c, o.theta,
                                                     BMax(o));
    out.strategies = {x, x};
    out.luba_game = luba::TwoBidderPrefixGame(o.v, o.c, BMax(o), o.theta);
  } else if (o.kind == "asymmetric") {
    auto pair = luba::AsymmetricTwoBidderEquilibrium(o.v, o.c);
    out.strategies = {pair.first, pair.second};
    out.luba_game = luba::AsymmetricTwoBidderGame(o.v, o.c);
  } else if (o.kind == "two-by-two") {
    auto pair = luba::TwoByTwoRiskEquilibrium(o.v, o.theta, o.theta2);
    out.strategies = {pair.first, pair.second};
    out.tabular_game = luba::TwoByTwoRiskGame(o.v, o.theta, o.theta2);
  } else if (o.kind == "three-bidder") {
    auto x = luba::ThreeBidderSymmetricEquilibrium(o.v, o.c);
    out.strategies = {x, x, x};
    out.luba_game = luba::ThreeBidderSymmetricGame(o.v, o.c);
  } else {
    throw luba::ConfigError("unknown closed form '" + o.kind +
                            "' (known: two-bidder, risk-two-bidder, "
                            "asymmetric, two-by-two, three-bidder)");
  }
  return out;
}

luba::AuctionConfig AuctionFromConfig(const Options& o) {
  if (o.config.empty()) throw luba::ConfigError("--config is required");
  return luba::LoadSpec(o.config).simulation.auction;
}

int RunSolve(const Options& o, bool verify) {
  Json out;
  out["kind"] = o.kind;
  if (o.kind == "pure") {
    auto config = AuctionFromConfig(o);
    auto equilibria =
        luba::PureEquilibria(config, luba::ParseActionMode(o.mode));
    Json list = Json::array();
    for (const auto& p : equilibria) list.push_back(p.ToString());
    out["pure_equilibria"] = list;
    std::cout << out.dump(2) << '\n';
    return kExitOk;
  }
  if (o.kind == "global-optimum") {
    auto go = luba::ComputeGlobalOptimum(AuctionFromConfig(o));
    out["go_payoff"] = go.go_payoff;
    out["inefficiency_gap"] = go.inefficiency_gap;
    out["witness"] = go.witness.ToString();
    std::cout << out.dump(2) << '\n';
    return kExitOk;
  }
  Solved solved = SolveClosedForm(o);
  Json strategies = Json::array();
  for (const auto& s : solved.strategies) strategies.push_back(s.probs());
  out["strategies"] = strategies;
  Json names = Json::array();
  for (int j = 0; j < solved.game().NumPlayers(); ++j) {
    Json row = Json::array();
    for (int k = 0; k < solved.game().NumActions(j); ++k) {
      row.push_back(solved.game().ActionName(j, k));
    }
    names.push_back(row);
  }
  out["actions"] = names;
  if (!verify) {
    std::cout << out.dump(2) << '\n';
    return kExitOk;
  }
  auto cert = luba::VerifyEquilibrium(solved.game(), solved.strategies);
  out["certificate"] = CertificateJson(cert);
  std::cout << out.dump(2) << '\n';
  return o.check && !cert.certified ? kExitCheck : kExitOk;
}

luba::BidProfile LoadProfile(const std::string& path, int n, int m) {
  YAML::Node root;
  try {
    root = YAML::Load(luba::ReadFile(path));
  } catch (const YAML::Exception& e) {
    throw luba::ConfigError(path + ":" + std::to_string(e.mark.line + 1) +
                            ":" + std::to_string(e.mark.column + 1) + ": " +
                            e.msg);
  }
  YAML::Node bids = root.IsMap() ? root["bids"] : root;
  auto fail = [&](const YAML::Node& node, const std::string& msg) {
    throw luba::ConfigError(path + ":" + std::to_string(node.Mark().line + 1) +
                            ":" + std::to_string(node.Mark().column + 1) +
                            ": " + msg);
  };
  if (!bids.IsSequence() || static_cast<int>(bids.size()) != n) {
    fail(bids, "bids must list one row per bidder (" + std::to_string(n) +
                   ")");
  }
  std::vector<luba::JointAction> rows;
  for (const auto& row : bids) {
    if (!row.IsSequence() || static_cast<int>(row.size()) != m) {
      fail(row, "each row needs one bid list per item (" +
                    std::to_string(m) + ")");
    }
    luba::JointAction joint;
    for (const auto& cell : row) {
      if (!cell.IsSequence()) fail(cell, "expected a list of bids");
      std::vector<int> b;
      for (const auto& x : cell) {
        try {
          b.push_back(x.as<int>());
        } catch (const YAML::Exception&) {
          fail(x, "expected an integer bid");
        }
      }
      try {
        joint.emplace_back(std::move(b));
      } catch (const std::invalid_argument& e) {
        fail(cell, e.what());
      }
    }
    rows.push_back(std::move(joint));
  }
  return luba::BidProfile(std::move(rows));
}

int RunResolve(const Options& o) {
  if (o.profile.empty()) throw luba::ConfigError("--profile is required");
  auto config = AuctionFromConfig(o);
  auto profile =
      LoadProfile(o.profile, config.num_bidders, config.num_items);
  auto outcomes = luba::ResolveProfile(profile);
  auto report = luba::ComputePayoffs(profile, config, outcomes);
  Json items = Json::array();
  for (size_t i = 0; i < outcomes.size(); ++i) {
    const auto& out = outcomes[i];
    Json hist = Json::object();
    for (const auto& [bid, count] : out.histogram) {
      hist[std::to_string(bid)] = count;
    }
    items.push_back(
        {{"item", i},
         {"histogram", hist},
         {"unique_bids", out.unique_bids},
         {"winning_bid", out.winning_bid ? Json(*out.winning_bid) : Json()},
         {"winner", out.winner ? Json(*out.winner) : Json()}});
  }
  Json result = {{"profile", profile.ToString()},
                 {"items", items},
                 {"bidder_payoffs", report.bidder_payoffs},
                 {"bidder_totals", report.bidder_totals},
                 {"auctioneer_payoffs", report.auctioneer_payoffs},
                 {"auctioneer_total", report.auctioneer_total}};
  std::cout << result.dump(2) << '\n';
  return kExitOk;
}

int RunRevenue(const Options& o) {
  luba::PoissonRevenueModel model;
  model.value = o.v;
  model.cost = o.c;
  model.registration_fee = o.cr;
  model.bid_cap = o.bid_cap;
  model.Validate();
  if (!(o.z_step > 0) || !(o.z_max >= o.z_min)) {
    throw luba::ConfigError("need z_step > 0 and z_max >= z_min");
  }
  std::vector<double> zs;
  for (int k = 0; o.z_min + k * o.z_step <= o.z_max + 1e-12; ++k) {
    zs.push_back(o.z_min + k * o.z_step);
  }
  auto curve = luba::RevenueCurve(model, o.bidders, zs);
  std::ofstream file;
  std::ostream* out = &std::cout;
  if (!o.out.empty()) {
    file.open(o.out);
    if (!file) throw luba::ConfigError("cannot write '" + o.out + "'");
    out = &file;
  }
  *out << "z,fee_revenue,expected_min_unique,total\n";
  for (const auto& p : curve) {
    *out << luba::FormatDouble(p.z) << ',' << luba::FormatDouble(p.fee_revenue)
         << ',' << luba::FormatDouble(p.expected_min_unique) << ','
         << luba::FormatDouble(p.total) << '\n';
  }
  auto threshold = luba::ProfitThresholdZ(model, o.bidders);
  std::cerr << "threshold: " << luba::ToString(threshold.verdict)
            << " z=" << luba::FormatDouble(threshold.z) << '\n';
  return kExitOk;
}

int Report(const luba::ScenarioResult& result, const Options& o) {
  const auto& m = result.metric;
  std::cout << (result.summary["scenario"].get<std::string>().empty()
                    ? std::string("learn")
                    : result.summary["scenario"].get<std::string>())
            << ": " << m.name << " = " << luba::FormatDouble(m.value) << ' '
            << m.comparison << ' ' << luba::FormatDouble(m.threshold) << " -> "
            << (m.passed ? "pass" : "fail") << '\n';
  for (const auto& f : result.files) std::cout << "  " << f << '\n';
  return o.check && !m.passed ? kExitCheck : kExitOk;
}

int RunLearn(const Options& o) {
  luba::ExperimentSpec spec =
      o.config.empty() ? luba::ExperimentSpec{} : luba::LoadSpec(o.config);
  ApplyOverrides(spec, o);
  return Report(luba::RunScenario(spec), o);
}

int RunNamedScenario(const Options& o) {
  luba::ExperimentSpec spec;
  if (!o.config.empty()) {
    spec = luba::LoadSpec(o.config);
    if (!o.scenario.empty() && o.scenario != spec.scenario) {
      throw luba::ConfigError("--scenario '" + o.scenario +
                              "' disagrees with the config scenario '" +
                              spec.scenario + "'");
    }
    if (spec.scenario.empty()) {
      throw luba::ConfigError("config names no scenario");
    }
  } else {
    if (o.scenario.empty()) {
      throw luba::ConfigError("--scenario or --config is required");
    }
    spec = luba::ScenarioSpec(o.scenario);
  }
  ApplyOverrides(spec, o);
  return Report(luba::RunScenario(spec), o);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lowest unique bid auctions: equilibria, learning, revenue"};
  app.require_subcommand(1);
  Options o;

  auto* resolve = app.add_subcommand("resolve", "Resolve one bid profile");
  resolve->add_option("--config", o.config, "Auction file")->required();
  resolve->add_option("--profile", o.profile,
                      "YAML/JSON file with bids[bidder][item] = [bids]")
      ->required();

  auto* solve = app.add_subcommand("solve", "Closed-form equilibria");
  AddGameFlags(solve, o);
  auto* verify = app.add_subcommand("verify", "Regret certificate");
  AddGameFlags(verify, o);

  auto* learn = app.add_subcommand("learn", "Run a learning experiment");
  AddRunFlags(learn, o);

  auto* revenue = app.add_subcommand("revenue", "Revenue against z as CSV");
  revenue->add_option("--v", o.v, "Item value");
  revenue->add_option("--c", o.c, "Submission cost");
  revenue->add_option("--cr", o.cr, "Registration fee");
  revenue->add_option("--n", o.bidders, "Registered bidders");
  revenue->add_option("--bid-cap", o.bid_cap, "Bid cap");
  revenue->add_option("--z-min", o.z_min);
  revenue->add_option("--z-max", o.z_max);
  revenue->add_option("--z-step", o.z_step);
  revenue->add_option("--out", o.out, "CSV path (default stdout)");

  auto* scenario = app.add_subcommand("scenario", "Run a named scenario");
  scenario->add_option("--scenario", o.scenario, "Registry name");
  AddRunFlags(scenario, o);

  auto* list = app.add_subcommand("list-scenarios", "List scenario names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*resolve) return RunResolve(o);
    if (*solve) return RunSolve(o, false);
    if (*verify) return RunSolve(o, true);
    if (*learn) return RunLearn(o);
    if (*revenue) return RunRevenue(o);
    if (*scenario) return RunNamedScenario(o);
    if (*list) {
      for (const auto& info : luba::ScenarioRegistry()) {
        std::cout << info.name << "\t" << info.description << '\n';
      }
      return kExitOk;
    }
  } catch (const luba::CapExceededError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitCap;
  } catch (const luba::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitFailure;
}
