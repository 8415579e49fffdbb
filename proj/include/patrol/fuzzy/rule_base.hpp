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
#pragma once

#include <string>
#include <vector>

namespace patrol::fuzzy {

/// IF front IS front_term AND right IS right_term THEN turn IS turn_term.
struct Rule {
  std::string front_term;
  std::string right_term;
  std::string turn_term;

  bool operator==(const Rule&) const = default;
};

/// Complete two-input rule table: exactly one rule per (front, right) pair.
class RuleBase {
 public:
  RuleBase(std::vector<std::string> front_terms, std::vector<std::string> right_terms,
           std::vector<std::string> turn_terms, std::vector<Rule> rules);

  const std::vector<std::string>& front_terms() const noexcept { return front_terms_; }
  const std::vector<std::string>& right_terms() const noexcept { return right_terms_; }
  const std::vector<std::string>& turn_terms() const noexcept { return turn_terms_; }
  const std::vector<Rule>& rules() const noexcept { return rules_; }

  /// Consequent for an antecedent pair; throws ContractViolation when
  /// either term is unknown.
  const std::string& consequent(const std::string& front, const std::string& right) const;

 private:
  std::vector<std::string> front_terms_;
  std::vector<std::string> right_terms_;
  std::vector<std::string> turn_terms_;
  std::vector<Rule> rules_;
};

/// The patrol robot's avoidance table over G/TB/X inputs and AI/K/DI/DV/DN
/// output terms:
///
///              right G   right TB   right X
///   front G      DN        DI         DV
///   front TB     AI        K          K
///   front X      AI        K          K
RuleBase default_rule_base();

}  // namespace patrol::fuzzy
