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

#include <stdexcept>
#include <vector>

#include "patrol/fuzzy/rule_base.hpp"
#include "patrol/fuzzy/variable.hpp"

namespace patrol::fuzzy {

/// Thrown by defuzz_centroid when every sample of the aggregate is zero.
/// Cannot happen with fully covering variables; guards custom term sets.
class NoActivation : public std::runtime_error {
 public:
  NoActivation() : std::runtime_error("aggregated output has no activation") {}
};

/// Output fuzzy set sampled on a strictly increasing grid.
class AggregatedOutput {
 public:
  AggregatedOutput(std::vector<double> grid, std::vector<double> degrees);

  const std::vector<double>& grid() const noexcept { return grid_; }
  const std::vector<double>& degrees() const noexcept { return degrees_; }

 private:
  std::vector<double> grid_;
  std::vector<double> degrees_;
};

/// Uniform grid over [lo, hi] with spacing at most step. Both endpoints are
/// included and points mirrored about zero are exact negatives of each other.
std::vector<double> output_grid(const Universe& universe, double step);

/// Max-min firing strength of every turn term (0 for terms no rule fires).
TermDegrees fire_rules(const RuleBase& rules, const TermDegrees& front,
                       const TermDegrees& right);

/// Mamdani max-min inference: each rule fires at min(front, right), its
/// consequent is clipped at that strength, and clipped sets are combined by
/// pointwise max on the output grid.
AggregatedOutput infer(const RuleBase& rules, const TermDegrees& front,
                       const TermDegrees& right, const LinguisticVariable& turn,
                       double grid_step);

/// Discrete centroid sum(x * mu) / sum(mu). Throws NoActivation on an
/// all-zero aggregate.
double defuzz_centroid(const AggregatedOutput& agg);

}  // namespace patrol::fuzzy
