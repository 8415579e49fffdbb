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
#include "patrol/fuzzy/rule_base.hpp"

#include <algorithm>

#include "patrol/fuzzy/membership.hpp"

namespace patrol::fuzzy {

namespace {

bool contains(const std::vector<std::string>& names, const std::string& n) {
  return std::find(names.begin(), names.end(), n) != names.end();
}

}  // namespace

RuleBase::RuleBase(std::vector<std::string> front_terms, std::vector<std::string> right_terms,
                   std::vector<std::string> turn_terms, std::vector<Rule> rules)
    : front_terms_(std::move(front_terms)),
      right_terms_(std::move(right_terms)),
      turn_terms_(std::move(turn_terms)),
      rules_(std::move(rules)) {
  if (rules_.size() != front_terms_.size() * right_terms_.size()) {
    throw ConfigError("rule table needs exactly one rule per (front, right) pair: expected " +
                      std::to_string(front_terms_.size() * right_terms_.size()) + ", got " +
                      std::to_string(rules_.size()));
  }
  for (std::size_t i = 0; i < rules_.size(); ++i) {
    const Rule& r = rules_[i];
    if (!contains(front_terms_, r.front_term)) {
      throw ConfigError("rule uses unknown front term '" + r.front_term + "'");
    }
    if (!contains(right_terms_, r.right_term)) {
      throw ConfigError("rule uses unknown right term '" + r.right_term + "'");
    }
    if (!contains(turn_terms_, r.turn_term)) {
      throw ConfigError("rule uses unknown turn term '" + r.turn_term + "'");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (rules_[j].front_term == r.front_term && rules_[j].right_term == r.right_term) {
        throw ConfigError("duplicate rule for (" + r.front_term + ", " + r.right_term + ")");
      }
    }
  }
}

const std::string& RuleBase::consequent(const std::string& front,
                                        const std::string& right) const {
  for (const auto& r : rules_) {
    if (r.front_term == front && r.right_term == right) return r.turn_term;
  }
  throw ContractViolation("no rule for (" + front + ", " + right + ")");
}

RuleBase default_rule_base() {
  return RuleBase({"G", "TB", "X"}, {"G", "TB", "X"}, {"AI", "K", "DI", "DV", "DN"},
                  {
                      {"G", "G", "DN"},
                      {"G", "TB", "DI"},
                      {"G", "X", "DV"},
                      {"TB", "G", "AI"},
                      {"TB", "TB", "K"},
                      {"TB", "X", "K"},
                      {"X", "G", "AI"},
                      {"X", "TB", "K"},
                      {"X", "X", "K"},
                  });
}

}  // namespace patrol::fuzzy
