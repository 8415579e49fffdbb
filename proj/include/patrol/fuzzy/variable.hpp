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

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "patrol/fuzzy/membership.hpp"

namespace patrol::fuzzy {

/// Degree of membership per term name. Terms absent from the map are
/// treated as zero by the inference step.
using TermDegrees = std::map<std::string, double, std::less<>>;

struct Universe {
  double lo = 0.0;
  double hi = 0.0;
};

struct Term {
  std::string name;
  MembershipFunction mf;
};

/// A named quantity over a closed interval, covered by ordered fuzzy terms.
///
/// Construction checks that every term's support lies within the universe
/// and that every interior point of the universe has at least one term with
/// a positive degree. A term may end in a zero foot exactly on a boundary.
class LinguisticVariable {
 public:
  LinguisticVariable(std::string name, Universe universe, std::string units,
                     std::vector<Term> terms);

  const std::string& name() const noexcept { return name_; }
  const Universe& universe() const noexcept { return universe_; }
  const std::string& units() const noexcept { return units_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }

  std::optional<std::size_t> index_of(std::string_view term) const noexcept;

  /// Throws ContractViolation for an unknown name.
  const MembershipFunction& term(std::string_view name) const;

  double clamp(double x) const noexcept;

  /// True when some term has a positive degree at x.
  bool covers(double x) const noexcept;

 private:
  std::string name_;
  Universe universe_;
  std::string units_;
  std::vector<Term> terms_;
};

/// Clamps x into the universe and returns the degree of every term.
TermDegrees fuzzify(const LinguisticVariable& v, double x);

}  // namespace patrol::fuzzy
