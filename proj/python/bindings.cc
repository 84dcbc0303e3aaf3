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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "luba/auction.h"
#include "luba/equilibria.h"
#include "luba/errors.h"
#include "luba/harness/experiment.h"
#include "luba/harness/scenarios.h"
#include "luba/learning.h"
#include "luba/revenue.h"
#include "luba/simulation.h"

namespace py = pybind11;

namespace {

using Bids = std::vector<std::vector<std::vector<int>>>;  // [bidder][item]

luba::BidProfile ToProfile(const Bids& bids) {
  std::vector<luba::JointAction> rows;
  for (const auto& row : bids) {
    luba::JointAction joint;
    for (const auto& cell : row) joint.emplace_back(cell);
    rows.push_back(std::move(joint));
  }
  return luba::BidProfile(std::move(rows));
}

py::dict OutcomeDict(const luba::ItemOutcome& out) {
  py::dict d;
  d["histogram"] = out.histogram;
  d["unique_bids"] = out.unique_bids;
  d["winning_bid"] = out.winning_bid;
  d["winner"] = out.winner;
  return d;
}

py::dict CertificateDict(const luba::EquilibriumCertificate& cert) {
  std::vector<std::vector<double>> strategies;
  for (const auto& s : cert.strategies) strategies.push_back(s.probs());
  py::dict d;
  d["strategies"] = strategies;
  d["max_regret"] = cert.max_regret;
  d["equilibrium_payoffs"] = cert.equilibrium_payoffs;
  d["action_payoffs"] = cert.action_payoffs;
  d["certified"] = cert.certified;
  return d;
}

std::vector<luba::MixedStrategy> ToStrategies(
    const std::vector<std::vector<double>>& probs) {
  std::vector<luba::MixedStrategy> out;
  for (const auto& p : probs) out.emplace_back(p);
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Lowest unique bid auctions";

  py::register_exception<luba::ConfigError>(m, "ConfigError",
                                            PyExc_ValueError);
  py::register_exception<luba::CapExceededError>(m, "CapExceededError",
                                                 PyExc_RuntimeError);

  py::class_<luba::AuctionConfig>(m, "AuctionConfig")
      .def(py::init<>())
      .def_static("symmetric", &luba::AuctionConfig::Symmetric,
                  py::arg("bidders"), py::arg("items"), py::arg("value"),
                  py::arg("cost"), py::arg("registration_fee"),
                  py::arg("budget"), py::arg("bid_cap"))
      .def_readwrite("num_bidders", &luba::AuctionConfig::num_bidders)
      .def_readwrite("num_items", &luba::AuctionConfig::num_items)
      .def_readwrite("registration_fee",
                     &luba::AuctionConfig::registration_fee)
      .def_readwrite("submission_costs",
                     &luba::AuctionConfig::submission_costs)
      .def_readwrite("budgets", &luba::AuctionConfig::budgets)
      .def_readwrite("valuations", &luba::AuctionConfig::valuations)
      .def_readwrite("bid_cap", &luba::AuctionConfig::bid_cap)
      .def_readwrite("risk", &luba::AuctionConfig::risk)
      .def("validate", &luba::AuctionConfig::Validate);

  m.def(
      "resolve_item",
      [](const std::vector<std::vector<int>>& bid_sets) {
        std::vector<luba::ActionSet> sets;
        for (const auto& b : bid_sets) sets.emplace_back(b);
        return OutcomeDict(luba::ResolveItem(sets));
      },
      py::arg("bid_sets"), "Winner determination for one item.");

  m.def(
      "compute_payoffs",
      [](const Bids& bids, const luba::AuctionConfig& config) {
        auto profile = ToProfile(bids);
        auto outcomes = luba::ResolveProfile(profile);
        auto report = luba::ComputePayoffs(profile, config, outcomes);
        py::list items;
        for (const auto& o : outcomes) items.append(OutcomeDict(o));
        py::dict d;
        d["items"] = items;
        d["bidder_payoffs"] = report.bidder_payoffs;
        d["bidder_totals"] = report.bidder_totals;
        d["auctioneer_payoffs"] = report.auctioneer_payoffs;
        d["auctioneer_total"] = report.auctioneer_total;
        return d;
      },
      py::arg("bids"), py::arg("config"));

  m.def(
      "two_bidder_equilibrium",
      [](double v, double c, int b_max) {
        return luba::TwoBidderEquilibrium(v, c, b_max).probs();
      },
      py::arg("v"), py::arg("c"), py::arg("b_max"));
  m.def(
      "risk_two_bidder_equilibrium",
      [](double v, double c, double theta, int b_max) {
        return luba::RiskSensitiveTwoBidderEquilibrium(v, c, theta, b_max)
            .probs();
      },
      py::arg("v"), py::arg("c"), py::arg("theta"), py::arg("b_max"));
  m.def(
      "three_bidder_equilibrium",
      [](double v, double c) {
        return luba::ThreeBidderSymmetricEquilibrium(v, c).probs();
      },
      py::arg("v"), py::arg("c"));
  m.def(
      "asymmetric_equilibrium",
      [](double v, double c) {
        auto pair = luba::AsymmetricTwoBidderEquilibrium(v, c);
        return std::make_pair(pair.first.probs(), pair.second.probs());
      },
      py::arg("v"), py::arg("c"));
  m.def(
      "two_by_two_risk_equilibrium",
      [](double v, double theta_1, double theta_2) {
        auto pair = luba::TwoByTwoRiskEquilibrium(v, theta_1, theta_2);
        return std::make_pair(pair.first.probs(), pair.second.probs());
      },
      py::arg("v"), py::arg("theta_1"), py::arg("theta_2"));

  m.def(
      "verify_two_bidder",
      [](const std::vector<std::vector<double>>& strategies, double v,
         double c, int b_max, double theta, double tol) {
        auto game = luba::TwoBidderPrefixGame(v, c, b_max, theta);
        return CertificateDict(
            luba::VerifyEquilibrium(game, ToStrategies(strategies), tol));
      },
      py::arg("strategies"), py::arg("v"), py::arg("c"), py::arg("b_max"),
      py::arg("theta") = 0.0, py::arg("tol") = 1e-9,
      "Regret certificate in the two-bidder prefix-set game.");

  m.def(
      "pure_equilibria",
      [](const luba::AuctionConfig& config, const std::string& mode) {
        std::vector<std::string> out;
        for (const auto& p :
             luba::PureEquilibria(config, luba::ParseActionMode(mode))) {
          out.push_back(p.ToString());
        }
        return out;
      },
      py::arg("config"), py::arg("mode") = "full_subsets");

  m.def(
      "ibg_strategy",
      [](const std::vector<double>& s, const std::vector<double>& r,
         double eps) { return luba::IbgStrategy(s, r, eps); },
      py::arg("s"), py::arg("r_hat"), py::arg("eps"));
  m.def(
      "ibg_value",
      [](const std::vector<double>& s, const std::vector<double>& r,
         double eps) {
        auto value = luba::ComputeIbgValue(s, r, eps);
        return std::make_pair(value.w, value.nu);
      },
      py::arg("s"), py::arg("r_hat"), py::arg("eps"));
  m.def(
      "replicator_field",
      [](const std::vector<double>& s, const std::vector<double>& payoffs) {
        return luba::ReplicatorField(s, payoffs);
      },
      py::arg("s"), py::arg("payoffs"));

  m.def(
      "expected_min_unique",
      [](double v, double c, double z, int bid_cap) {
        luba::PoissonRevenueModel model{v, c, z, 0.0, bid_cap};
        return luba::ExpectedMinUnique(model);
      },
      py::arg("v"), py::arg("c"), py::arg("z"), py::arg("bid_cap"));
  m.def(
      "expected_revenue",
      [](double v, double c, double z, double registration_fee, int bid_cap,
         int registrants) {
        luba::PoissonRevenueModel model{v, c, z, registration_fee, bid_cap};
        return luba::ExpectedRevenue(model, registrants);
      },
      py::arg("v"), py::arg("c"), py::arg("z"), py::arg("registration_fee"),
      py::arg("bid_cap"), py::arg("registrants"));

  m.def(
      "scenario_names",
      [] {
        std::vector<std::string> names;
        for (const auto& info : luba::ScenarioRegistry()) {
          names.push_back(info.name);
        }
        return names;
      });
  m.def(
      "scenario_spec",
      [](const std::string& name) {
        return luba::EmitJsonSpec(luba::ScenarioSpec(name));
      },
      py::arg("name"), "Default spec of a scenario as JSON text.");
  m.def(
      "run_spec",
      [](const std::string& text, bool json, bool write_files) {
        auto spec = json ? luba::ParseJsonSpec(text) : luba::ParseYamlSpec(text);
        py::gil_scoped_release release;
        return luba::RunScenario(spec, write_files).summary.dump();
      },
      py::arg("text"), py::arg("json") = true, py::arg("write_files") = false,
      "Runs a spec given as text and returns the JSON summary text.");
  m.def(
      "normalize_spec",
      [](const std::string& text, bool json) {
        auto spec = json ? luba::ParseJsonSpec(text) : luba::ParseYamlSpec(text);
        return luba::EmitJsonSpec(spec);
      },
      py::arg("text"), py::arg("json") = false);
}
