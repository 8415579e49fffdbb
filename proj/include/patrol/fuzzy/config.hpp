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

#include <filesystem>

#include <json.hpp>

#include "patrol/fuzzy/rule_base.hpp"
#include "patrol/fuzzy/variable.hpp"

namespace patrol::fuzzy {

/// Everything the avoidance controller needs: the two sonar inputs (front
/// is U2, right is U3), the turn-angle output, the rule table and the
/// defuzzification grid step.
struct FuzzyConfig {
  LinguisticVariable front;
  LinguisticVariable right;
  LinguisticVariable turn;
  RuleBase rules;
  double grid_step;

  /// Throws ConfigError when the rule table and the variables disagree on
  /// term names, or grid_step is not positive.
  void validate() const;

  /// Inputs on [4, 100] cm with G/TB/X, output on [-20, 60] degrees with
  /// AI/K/DI/DV/DN, the default rule table and a 0.05 degree grid.
  static FuzzyConfig canonical();
};

/// Builds a config from JSON. Missing sections fall back to canonical().
FuzzyConfig fuzzy_config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const FuzzyConfig& cfg);
FuzzyConfig load_fuzzy_config(const std::filesystem::path& path);

/// Full avoidance pipeline on raw sonar readings (255 means no echo):
/// clamp, fuzzify, infer, defuzzify. Positive angles turn right, away from
/// the followed left wall. Result lies in the turn universe.
double avoidance_angle(double front_cm, double right_cm, const FuzzyConfig& cfg);

}  // namespace patrol::fuzzy
