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

#include "luba/harness/experiment.h"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <fstream>
#include <nlohmann/json.hpp>
#include <set>
#include <sstream>

#include "luba/errors.h"
#include "luba/harness/scenarios.h"

namespace luba {
namespace {

using Json = nlohmann::ordered_json;

class Reader {
 public:
  explicit Reader(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void Fail(const YAML::Mark& mark, const std::string& path,
                         const std::string& message) const {
    std::string where = source_;
    if (!mark.is_null()) {
      where += ":" + std::to_string(mark.line + 1) + ":" +
               std::to_string(mark.column + 1);
    }
    if (!path.empty()) where += " (at " + path + ")";
    throw ConfigError(where + ": " + message);
  }

  void CheckMap(const YAML::Node& node, const std::string& path) const {
    if (!node.IsMap()) Fail(node.Mark(), path, "expected a mapping");
  }

  void CheckKeys(const YAML::Node& map, const std::string& path,
                 std::initializer_list<const char*> allowed) const {
    for (auto it = map.begin(); it != map.end(); ++it) {
      std::string key = it->first.Scalar();
      bool known = std::any_of(allowed.begin(), allowed.end(),
                               [&](const char* k) { return key == k; });
      if (!known) {
        std::string options;
        for (const char* k : allowed) {
          options += options.empty() ? "" : ", ";
          options += k;
        }
        Fail(it->first.Mark(), path + "/" + key,
             "unknown key '" + key + "' (allowed: " + options + ")");
      }
    }
  }

  template <typename T>
  T As(const YAML::Node& node, const std::string& path,
       const char* type) const {
    if (!node.IsScalar()) Fail(node.Mark(), path, std::string("expected ") + type);
    try {
      return node.as<T>();
    } catch (const YAML::Exception&) {
      Fail(node.Mark(), path, std::string("expected ") + type + ", got '" +
                                  node.Scalar() + "'");
    }
  }

  template <typename T>
  void Field(const YAML::Node& map, const std::string& path, const char* key,
             T& out, const char* type) const {
    YAML::Node node = map[key];
    if (node.IsDefined() && !node.IsNull()) {
      out = As<T>(node, path + "/" + key, type);
    }
  }

  // Scalar broadcast to `size`, or a list.
  void Vector(const YAML::Node& map, const std::string& path, const char* key,
              std::vector<double>& out, int size) const {
    YAML::Node node = map[key];
    if (!node.IsDefined() || node.IsNull()) return;
    std::string here = path + "/" + key;
    if (node.IsScalar()) {
      out.assign(size, As<double>(node, here, "a number"));
      return;
    }
    out = List<double>(node, here, "a number");
  }

  template <typename T>
  std::vector<T> List(const YAML::Node& node, const std::string& path,
                      const char* type) const {
    if (!node.IsSequence()) Fail(node.Mark(), path, "expected a list");
    std::vector<T> out;
    for (size_t k = 0; k < node.size(); ++k) {
      out.push_back(As<T>(node[k], path + "/" + std::to_string(k), type));
    }
    return out;
  }

  template <typename T>
  void ListField(const YAML::Node& map, const std::string& path,
                 const char* key, std::vector<T>& out,
                 const char* type) const {
    YAML::Node node = map[key];
    if (node.IsDefined() && !node.IsNull()) {
      out = List<T>(node, path + "/" + key, type);
    }
  }

  template <typename Enum>
  void EnumField(const YAML::Node& map, const std::string& path,
                 const char* key, Enum& out,
                 Enum (*parse)(const std::string&)) const {
    YAML::Node node = map[key];
    if (!node.IsDefined() || node.IsNull()) return;
    std::string name = As<std::string>(node, path + "/" + key, "a name");
    try {
      out = parse(name);
    } catch (const ConfigError& e) {
      Fail(node.Mark(), path + "/" + key, e.what());
    }
  }

  ExperimentSpec Read(const YAML::Node& root) const {
    ExperimentSpec spec;
    if (!root.IsDefined() || root.IsNull()) return spec;
    CheckMap(root, "");
    CheckKeys(root, "", {"scenario", "auction", "learning", "run", "report"});
    Field(root, "", "scenario", spec.scenario, "a scenario name");
    if (YAML::Node node = root["auction"]; node.IsDefined() && !node.IsNull()) {
      ReadAuction(node, spec);
    }
    if (YAML::Node node = root["learning"]; node.IsDefined() && !node.IsNull()) {
      ReadLearning(node, spec.simulation);
    }
    if (YAML::Node node = root["run"]; node.IsDefined() && !node.IsNull()) {
      ReadRun(node, spec);
    }
    if (YAML::Node node = root["report"]; node.IsDefined() && !node.IsNull()) {
      const std::string path = "/report";
      CheckMap(node, path);
      CheckKeys(node, path, {"percentiles", "l1_to_analytic"});
      ListField(node, path, "percentiles", spec.report.percentiles,
                "a number");
      Field(node, path, "l1_to_analytic", spec.report.l1_to_analytic,
            "a boolean");
    }
    return spec;
  }

 private:
  void ReadAuction(const YAML::Node& node, ExperimentSpec& spec) const {
    const std::string path = "/auction";
    CheckMap(node, path);
    CheckKeys(node, path,
              {"bidders", "items", "registration_fee", "submission_cost",
               "budget", "valuations", "bid_cap", "risk", "resources"});
    AuctionConfig& a = spec.simulation.auction;
    Field(node, path, "bidders", a.num_bidders, "an integer");
    Field(node, path, "items", a.num_items, "an integer");
    if (a.num_bidders < 1) {
      Fail(node["bidders"].Mark(), path + "/bidders",
           "num_bidders must be >= 1");
    }
    if (a.num_items < 1) {
      Fail(node["items"].Mark(), path + "/items", "num_items must be >= 1");
    }
    Field(node, path, "registration_fee", a.registration_fee, "a number");
    Field(node, path, "bid_cap", a.bid_cap, "an integer");
    // Resize defaults to the declared shape before reading overrides.
    double cost = a.submission_costs.empty() ? 1.0 : a.submission_costs[0];
    double budget = a.budgets.empty() ? 6.0 : a.budgets[0];
    double value = a.valuations.empty() ? 8.0 : a.valuations[0][0];
    a.submission_costs.assign(a.num_items, cost);
    a.budgets.assign(a.num_bidders, budget);
    a.valuations.assign(a.num_bidders, std::vector<double>(a.num_items, value));
    Vector(node, path, "submission_cost", a.submission_costs, a.num_items);
    Vector(node, path, "budget", a.budgets, a.num_bidders);
    Vector(node, path, "risk", a.risk, a.num_bidders);
    Vector(node, path, "resources", spec.resources, a.num_items);
    if (YAML::Node v = node["valuations"]; v.IsDefined() && !v.IsNull()) {
      std::string here = path + "/valuations";
      if (v.IsScalar()) {
        double x = As<double>(v, here, "a number");
        a.valuations.assign(a.num_bidders, std::vector<double>(a.num_items, x));
      } else if (v.IsSequence() && v.size() > 0 && v[0].IsSequence()) {
        a.valuations.clear();
        for (size_t j = 0; j < v.size(); ++j) {
          a.valuations.push_back(List<double>(
              v[j], here + "/" + std::to_string(j), "a number"));
        }
      } else {
        std::vector<double> row = List<double>(v, here, "a number");
        a.valuations.assign(a.num_bidders, row);
      }
    }
  }

  void ReadLearning(const YAML::Node& node, SimulationConfig& sim) const {
    const std::string path = "/learning";
    CheckMap(node, path);
    CheckKeys(node, path,
              {"algorithm", "iterations", "action_mode", "budget_mode",
               "alpha", "lambda", "epsilon", "update", "schedule",
               "initial_estimates", "initial_value", "noise_std",
               "record_stride", "snapshots"});
    EnumField(node, path, "algorithm", sim.algorithm, &ParseAlgorithm);
    Field(node, path, "iterations", sim.iterations, "an integer");
    EnumField(node, path, "action_mode", sim.action_mode, &ParseActionMode);
    EnumField(node, path, "budget_mode", sim.budget_mode, &ParseBudgetMode);
    Field(node, path, "alpha", sim.params.alpha, "a number");
    Field(node, path, "lambda", sim.params.lambda, "a number");
    Field(node, path, "epsilon", sim.params.epsilon, "a number");
    EnumField(node, path, "update", sim.params.rule, &ParseUpdateRule);
    EnumField(node, path, "schedule", sim.schedule, &ParseEpsilonSchedule);
    EnumField(node, path, "initial_estimates", sim.initial_estimates,
              &ParseInitialEstimates);
    Field(node, path, "initial_value", sim.initial_value, "a number");
    Field(node, path, "noise_std", sim.noise_std, "a number");
    Field(node, path, "record_stride", sim.record_stride, "an integer");
    ListField(node, path, "snapshots", sim.snapshot_iterations, "an integer");
  }

  void ReadRun(const YAML::Node& node, ExperimentSpec& spec) const {
    const std::string path = "/run";
    CheckMap(node, path);
    CheckKeys(node, path, {"repeats", "seed", "seeds", "output", "format"});
    Field(node, path, "repeats", spec.repeats, "an integer");
    Field(node, path, "seed", spec.seed, "an unsigned integer");
    ListField(node, path, "seeds", spec.seeds, "an unsigned integer");
    Field(node, path, "output", spec.output, "a path");
    Field(node, path, "format", spec.format, "csv or json");
  }

  std::string source_;
};

ExperimentSpec Finish(ExperimentSpec spec) {
  spec.Validate();
  spec.simulation.seed = spec.RepeatSeeds().front();
  return spec;
}

std::pair<int, int> LineColumn(const std::string& text, size_t offset) {
  int line = 1, column = 1;
  for (size_t k = 0; k < offset && k < text.size(); ++k) {
    if (text[k] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

YAML::Node ToYaml(const Json& json) {
  if (json.is_object()) {
    YAML::Node node(YAML::NodeType::Map);
    for (const auto& [key, value] : json.items()) node[key] = ToYaml(value);
    return node;
  }
  if (json.is_array()) {
    YAML::Node node(YAML::NodeType::Sequence);
    for (const auto& value : json) node.push_back(ToYaml(value));
    return node;
  }
  if (json.is_null()) return YAML::Node(YAML::NodeType::Null);
  if (json.is_string()) return YAML::Node(json.get<std::string>());
  if (json.is_boolean()) return YAML::Node(json.get<bool>() ? "true" : "false");
  if (json.is_number_float()) return YAML::Node(FormatDouble(json.get<double>()));
  return YAML::Node(json.dump());
}

Json SpecToJson(const ExperimentSpec& spec) {
  const SimulationConfig& sim = spec.simulation;
  const AuctionConfig& a = sim.auction;
  Json root;
  if (!spec.scenario.empty()) root["scenario"] = spec.scenario;
  Json auction;
  auction["bidders"] = a.num_bidders;
  auction["items"] = a.num_items;
  auction["registration_fee"] = a.registration_fee;
  auction["submission_cost"] = a.submission_costs;
  auction["budget"] = a.budgets;
  auction["valuations"] = a.valuations;
  auction["bid_cap"] = a.bid_cap;
  if (!a.risk.empty()) auction["risk"] = a.risk;
  if (!spec.resources.empty()) auction["resources"] = spec.resources;
  root["auction"] = auction;
  Json learning;
  learning["algorithm"] = ToString(sim.algorithm);
  learning["iterations"] = sim.iterations;
  learning["action_mode"] = ToString(sim.action_mode);
  learning["budget_mode"] = ToString(sim.budget_mode);
  learning["alpha"] = sim.params.alpha;
  learning["lambda"] = sim.params.lambda;
  learning["epsilon"] = sim.params.epsilon;
  learning["update"] = ToString(sim.params.rule);
  learning["schedule"] = ToString(sim.schedule);
  learning["initial_estimates"] = ToString(sim.initial_estimates);
  learning["initial_value"] = sim.initial_value;
  learning["noise_std"] = sim.noise_std;
  learning["record_stride"] = sim.record_stride;
  learning["snapshots"] = sim.snapshot_iterations;
  root["learning"] = learning;
  Json run;
  run["repeats"] = spec.repeats;
  run["seed"] = spec.seed;
  run["seeds"] = spec.seeds;
  run["output"] = spec.output;
  run["format"] = spec.format;
  root["run"] = run;
  Json report;
  report["percentiles"] = spec.report.percentiles;
  report["l1_to_analytic"] = spec.report.l1_to_analytic;
  root["report"] = report;
  return root;
}

void EmitYaml(YAML::Emitter& out, const Json& json) {
  if (json.is_object()) {
    out << YAML::BeginMap;
    for (const auto& [key, value] : json.items()) {
      out << YAML::Key << key << YAML::Value;
      EmitYaml(out, value);
    }
    out << YAML::EndMap;
  } else if (json.is_array()) {
    bool flat = std::none_of(json.begin(), json.end(),
                             [](const Json& v) { return v.is_structured(); });
    if (flat) out << YAML::Flow;
    out << YAML::BeginSeq;
    for (const auto& value : json) EmitYaml(out, value);
    out << YAML::EndSeq;
  } else if (json.is_string()) {
    out << json.get<std::string>();
  } else if (json.is_boolean()) {
    out << json.get<bool>();
  } else if (json.is_number_float()) {
    out << FormatDouble(json.get<double>());
  } else {
    out << json.dump();
  }
}

}  // namespace

SimulationConfig DefaultSimulation() {
  SimulationConfig sim;
  sim.auction = AuctionConfig::Symmetric(2, 1, 8.0, 1.0, 0.0, 6.0, 6);
  sim.iterations = 5000;
  sim.action_mode = ActionMode::kPrefixSets;
  sim.budget_mode = BudgetMode::kStatic;
  sim.params.alpha = 0.5;
  sim.params.lambda = 0.1;
  sim.record_stride = 50;
  return sim;
}

std::vector<uint64_t> ExperimentSpec::RepeatSeeds() const {
  if (!seeds.empty()) return seeds;
  std::vector<uint64_t> out;
  for (int r = 0; r < repeats; ++r) out.push_back(seed + r);
  return out;
}

void ExperimentSpec::Validate() const {
  simulation.Validate();
  if (repeats < 1) throw ConfigError("repeats must be >= 1");
  if (!seeds.empty()) {
    if (static_cast<int>(seeds.size()) != repeats) {
      throw ConfigError("seeds must have one entry per repeat");
    }
    if (std::set<uint64_t>(seeds.begin(), seeds.end()).size() != seeds.size()) {
      throw ConfigError("seeds must be distinct per repeat");
    }
  }
  if (format != "csv" && format != "json") {
    throw ConfigError("format must be csv or json");
  }
  if (!resources.empty() &&
      static_cast<int>(resources.size()) != simulation.auction.num_items) {
    throw ConfigError("resources must have one entry per item");
  }
  for (double r : resources) {
    if (!(r >= 0)) throw ConfigError("resources must be >= 0");
  }
  for (double p : report.percentiles) {
    if (!(p >= 0 && p <= 100)) {
      throw ConfigError("percentiles must lie in [0, 100]");
    }
  }
  if (!scenario.empty() && !IsKnownScenario(scenario)) {
    throw ConfigError("unknown scenario '" + scenario + "'");
  }
}

ExperimentSpec ParseYamlSpec(const std::string& text,
                             const std::string& source) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ConfigError(source + ":" + std::to_string(e.mark.line + 1) + ":" +
                      std::to_string(e.mark.column + 1) + ": " + e.msg);
  }
  return Finish(Reader(source).Read(root));
}

ExperimentSpec ParseJsonSpec(const std::string& text,
                             const std::string& source) {
  Json json;
  try {
    json = Json::parse(text);
  } catch (const Json::parse_error& e) {
    auto [line, column] = LineColumn(text, e.byte > 0 ? e.byte - 1 : 0);
    throw ConfigError(source + ":" + std::to_string(line) + ":" +
                      std::to_string(column) + ": invalid JSON");
  }
  YAML::Node root;
  try {
    // Same text through the YAML reader keeps line/column marks.
    root = YAML::Load(text);
  } catch (const YAML::Exception&) {
    root = ToYaml(json);
  }
  return Finish(Reader(source).Read(root));
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

ExperimentSpec LoadSpec(const std::string& path) {
  std::string text = ReadFile(path);
  bool json = path.size() >= 5 && path.substr(path.size() - 5) == ".json";
  return json ? ParseJsonSpec(text, path) : ParseYamlSpec(text, path);
}

std::string EmitYamlSpec(const ExperimentSpec& spec) {
  YAML::Emitter out;
  EmitYaml(out, SpecToJson(spec));
  return std::string(out.c_str()) + "\n";
}

std::string EmitJsonSpec(const ExperimentSpec& spec) {
  return SpecToJson(spec).dump(2) + "\n";
}

}  // namespace luba
