// Copyright 2026 The Patrolbot Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "patrol/fuzzy/config.hpp"

#include <fstream>

#include "patrol/fuzzy/inference.hpp"

namespace patrol::fuzzy {

using nlohmann::json;

namespace {

LinguisticVariable sonar_input(const std::string& name) {
  return LinguisticVariable(name, {4.0, 100.0}, "cm",
                            {
                                {"G", MembershipFunction::trapezoid(4, 4, 25, 45)},
                                {"TB", MembershipFunction::triangle(25, 45, 70)},
                                {"X", MembershipFunction::trapezoid(45, 70, 100, 100)},
                            });
}

LinguisticVariable turn_output() {
  return LinguisticVariable("alpha", {-20.0, 60.0}, "deg",
                            {
                                {"AI", MembershipFunction::triangle(-20, -10, 0)},
                                {"K", MembershipFunction::triangle(-10, 0, 10)},
                                {"DI", MembershipFunction::triangle(0, 15, 30)},
                                {"DV", MembershipFunction::triangle(15, 30, 45)},
                                {"DN", MembershipFunction::trapezoid(30, 45, 60, 60)},
                            });
}

MembershipFunction mf_from_json(const json& j) {
  const auto shape = j.at("shape").get<std::string>();
  const auto pts = j.at("points").get<std::vector<double>>();
  if (shape == "triangle") {
    if (pts.size() != 3) throw ConfigError("triangle needs 3 points");
    return MembershipFunction::triangle(pts[0], pts[1], pts[2]);
  }
  if (shape == "trapezoid") {
    if (pts.size() != 4) throw ConfigError("trapezoid needs 4 points");
    return MembershipFunction::trapezoid(pts[0], pts[1], pts[2], pts[3]);
  }
  throw ConfigError("unknown membership shape '" + shape + "'");
}

LinguisticVariable variable_from_json(const json& j) {
  const auto universe = j.at("universe").get<std::vector<double>>();
  if (universe.size() != 2) throw ConfigError("universe must be [lo, hi]");
  std::vector<Term> terms;
  for (const auto& t : j.at("terms")) {
    terms.push_back({t.at("name").get<std::string>(), mf_from_json(t)});
  }
  return LinguisticVariable(j.value("name", std::string("var")), {universe[0], universe[1]},
                            j.value("units", std::string()), std::move(terms));
}

json variable_to_json(const LinguisticVariable& v) {
  json terms = json::array();
  for (const auto& t : v.terms()) {
    const auto pts = t.mf.breakpoints();
    terms.push_back({{"name", t.name},
                     {"shape", t.mf.kind() == MembershipFunction::Kind::triangle ? "triangle"
                                                                                 : "trapezoid"},
                     {"points", std::vector<double>(pts.begin(), pts.end())}});
  }
  return {{"name", v.name()},
          {"universe", {v.universe().lo, v.universe().hi}},
          {"units", v.units()},
          {"terms", terms}};
}

std::vector<std::string> term_names(const LinguisticVariable& v) {
  std::vector<std::string> names;
  for (const auto& t : v.terms()) names.push_back(t.name);
  return names;
}

}  // namespace

void FuzzyConfig::validate() const {
  if (!(grid_step > 0.0)) throw ConfigError("grid_step must be positive");
  if (rules.front_terms() != term_names(front) || rules.right_terms() != term_names(right) ||
      rules.turn_terms() != term_names(turn)) {
    throw ConfigError("rule table terms do not match the linguistic variables");
  }
  // Clamped readings land on the input boundaries, so those must activate.
  for (const auto* v : {&front, &right}) {
    if (!v->covers(v->universe().lo) || !v->covers(v->universe().hi)) {
      throw ConfigError("input '" + v->name() + "' must cover both universe endpoints");
    }
  }
}

FuzzyConfig FuzzyConfig::canonical() {
  return FuzzyConfig{sonar_input("U2"), sonar_input("U3"), turn_output(), default_rule_base(),
                     0.05};
}

FuzzyConfig fuzzy_config_from_json(const json& j) {
  try {
    FuzzyConfig base = FuzzyConfig::canonical();
    LinguisticVariable front = j.contains("front") ? variable_from_json(j["front"]) : base.front;
    LinguisticVariable right = j.contains("right") ? variable_from_json(j["right"]) : base.right;
    LinguisticVariable turn = j.contains("turn") ? variable_from_json(j["turn"]) : base.turn;

    RuleBase rules = base.rules;
    if (j.contains("rules")) {
      std::vector<Rule> table;
      for (const auto& r : j["rules"]) {
        const auto row = r.get<std::vector<std::string>>();
        if (row.size() != 3) throw ConfigError("rule must be [front, right, turn]");
        table.push_back({row[0], row[1], row[2]});
      }
      rules = RuleBase(term_names(front), term_names(right), term_names(turn), std::move(table));
    }

    FuzzyConfig cfg{std::move(front), std::move(right), std::move(turn), std::move(rules),
                    j.value("grid_step", base.grid_step)};
    cfg.validate();
    return cfg;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("fuzzy config: ") + e.what());
  }
}

json to_json(const FuzzyConfig& cfg) {
  json rules = json::array();
  for (const auto& r : cfg.rules.rules()) rules.push_back({r.front_term, r.right_term, r.turn_term});
  return {{"grid_step", cfg.grid_step},
          {"front", variable_to_json(cfg.front)},
          {"right", variable_to_json(cfg.right)},
          {"turn", variable_to_json(cfg.turn)},
          {"rules", rules}};
}

FuzzyConfig load_fuzzy_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open fuzzy config " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  return fuzzy_config_from_json(j);
}

double avoidance_angle(double front_cm, double right_cm, const FuzzyConfig& cfg) {
  const TermDegrees front = fuzzify(cfg.front, front_cm);
  const TermDegrees right = fuzzify(cfg.right, right_cm);
  const AggregatedOutput agg = infer(cfg.rules, front, right, cfg.turn, cfg.grid_step);
  return defuzz_centroid(agg);
}

}  // namespace patrol::fuzzy
