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
#include "patrol/fuzzy/inference.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

namespace patrol::fuzzy {

namespace {

__extension__ using Int128 = __int128;

// Fixed-point scale for the centroid numerator: 2^64.
constexpr double kFixedScale = 18446744073709551616.0;
constexpr std::size_t kMaxGridPoints = 50'000'000;

double degree_of(const TermDegrees& degrees, const std::string& term) {
  auto it = degrees.find(term);
  return it == degrees.end() ? 0.0 : it->second;
}

void require_known(const TermDegrees& degrees, const std::vector<std::string>& terms,
                   const char* which) {
  for (const auto& [name, mu] : degrees) {
    if (std::find(terms.begin(), terms.end(), name) == terms.end()) {
      throw ContractViolation(std::string("unknown ") + which + " term '" + name + "'");
    }
    if (!(mu >= 0.0 && mu <= 1.0)) {
      throw ContractViolation(std::string(which) + " degree for '" + name +
                              "' is outside [0, 1]");
    }
  }
}

}  // namespace

AggregatedOutput::AggregatedOutput(std::vector<double> grid, std::vector<double> degrees)
    : grid_(std::move(grid)), degrees_(std::move(degrees)) {
  if (grid_.empty() || grid_.size() != degrees_.size()) {
    throw ContractViolation("aggregate needs a non-empty grid with one degree per point");
  }
  for (std::size_t i = 0; i < grid_.size(); ++i) {
    if (!std::isfinite(grid_[i]) || (i > 0 && !(grid_[i] > grid_[i - 1]))) {
      throw ContractViolation("aggregate grid must be finite and strictly increasing");
    }
    if (!(degrees_[i] >= 0.0 && degrees_[i] <= 1.0)) {
      throw ContractViolation("aggregate degree outside [0, 1]");
    }
  }
}

std::vector<double> output_grid(const Universe& universe, double step) {
  if (!(step > 0.0) || !std::isfinite(step)) {
    throw ContractViolation("grid step must be positive and finite");
  }
  const double span = universe.hi - universe.lo;
  const double intervals = std::ceil(span / step - 1e-9);
  if (intervals + 1.0 > static_cast<double>(kMaxGridPoints)) {
    throw ContractViolation("grid step too small for the output universe");
  }
  const auto n = static_cast<std::size_t>(std::max(1.0, intervals));
  const double dn = static_cast<double>(n);
  // lo*n + i*span keeps integer-valued universes exact, so x and -x come
  // out as exact negatives.
  std::vector<double> grid(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    grid[i] = (universe.lo * dn + static_cast<double>(i) * span) / dn;
  }
  grid.front() = universe.lo;
  grid.back() = universe.hi;
  return grid;
}

TermDegrees fire_rules(const RuleBase& rules, const TermDegrees& front,
                       const TermDegrees& right) {
  require_known(front, rules.front_terms(), "front");
  require_known(right, rules.right_terms(), "right");
  TermDegrees strength;
  for (const auto& t : rules.turn_terms()) strength.emplace(t, 0.0);
  for (const auto& r : rules.rules()) {
    const double s = std::min(degree_of(front, r.front_term), degree_of(right, r.right_term));
    auto& slot = strength.find(r.turn_term)->second;
    slot = std::max(slot, s);
  }
  return strength;
}

AggregatedOutput infer(const RuleBase& rules, const TermDegrees& front,
                       const TermDegrees& right, const LinguisticVariable& turn,
                       double grid_step) {
  const TermDegrees strength = fire_rules(rules, front, right);

  struct Active {
    const MembershipFunction* mf;
    double level;
  };
  std::vector<Active> active;
  for (const auto& [name, level] : strength) {
    if (level > 0.0) active.push_back({&turn.term(name), level});
  }

  std::vector<double> grid = output_grid(turn.universe(), grid_step);
  std::vector<double> degrees(grid.size(), 0.0);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double mu = 0.0;
    for (const auto& a : active) mu = std::max(mu, std::min(a.level, a.mf->degree(grid[i])));
    degrees[i] = mu;
  }
  return AggregatedOutput(std::move(grid), std::move(degrees));
}

double defuzz_centroid(const AggregatedOutput& agg) {
  const auto& grid = agg.grid();
  const auto& degrees = agg.degrees();
  // The numerator is accumulated in 2^-64 fixed point: integer addition is
  // associative, so a mirror-symmetric aggregate sums to exactly zero.
  Int128 numerator = 0;
  double denominator = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double mu = degrees[i];
    if (mu <= 0.0) continue;
    denominator += mu;
    numerator += static_cast<Int128>(grid[i] * mu * kFixedScale);
  }
  if (denominator <= 0.0) throw NoActivation();
  const double centroid = static_cast<double>(numerator) / kFixedScale / denominator;
  return std::clamp(centroid, grid.front(), grid.back());
}

}  // namespace patrol::fuzzy
