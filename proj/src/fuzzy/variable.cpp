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
#include "patrol/fuzzy/variable.hpp"

#include <algorithm>
#include <cmath>

namespace patrol::fuzzy {

namespace {

// Every term is linear between consecutive breakpoints of the combined set,
// so probing the breakpoints and the midpoints between them decides
// coverage exactly.
void require_coverage(const std::string& name, const Universe& u,
                      const std::vector<Term>& terms) {
  std::vector<double> probes{u.lo, u.hi};
  for (const auto& t : terms) {
    for (double p : {t.mf.support_lo(), t.mf.core_lo(), t.mf.core_hi(), t.mf.support_hi()}) {
      if (p >= u.lo && p <= u.hi) probes.push_back(p);
    }
  }
  std::sort(probes.begin(), probes.end());
  probes.erase(std::unique(probes.begin(), probes.end()), probes.end());
  const std::size_t n = probes.size();
  for (std::size_t i = 0; i + 1 < n; ++i) probes.push_back(0.5 * (probes[i] + probes[i + 1]));
  // A term's zero foot may sit on the universe boundary (AI at -20 degrees).
  // Inputs additionally need covered endpoints, see FuzzyConfig::validate.
  std::erase_if(probes, [&](double x) { return x == u.lo || x == u.hi; });

  for (double x : probes) {
    const bool covered = std::any_of(terms.begin(), terms.end(),
                                     [x](const Term& t) { return t.mf.degree(x) > 0.0; });
    if (!covered) {
      throw ConfigError("variable '" + name + "' leaves x=" + std::to_string(x) +
                        " uncovered by every term");
    }
  }
}

}  // namespace

LinguisticVariable::LinguisticVariable(std::string name, Universe universe, std::string units,
                                       std::vector<Term> terms)
    : name_(std::move(name)),
      universe_(universe),
      units_(std::move(units)),
      terms_(std::move(terms)) {
  if (!std::isfinite(universe_.lo) || !std::isfinite(universe_.hi) ||
      !(universe_.lo < universe_.hi)) {
    throw ConfigError("variable '" + name_ + "' needs a finite universe with lo < hi");
  }
  if (terms_.empty()) throw ConfigError("variable '" + name_ + "' has no terms");
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const auto& t = terms_[i];
    if (t.name.empty()) throw ConfigError("variable '" + name_ + "' has an unnamed term");
    for (std::size_t j = 0; j < i; ++j) {
      if (terms_[j].name == t.name) {
        throw ConfigError("variable '" + name_ + "' repeats term '" + t.name + "'");
      }
    }
    if (t.mf.support_lo() < universe_.lo || t.mf.support_hi() > universe_.hi) {
      throw ConfigError("term '" + t.name + "' of '" + name_ + "' " + t.mf.describe() +
                        " reaches outside the universe");
    }
  }
  require_coverage(name_, universe_, terms_);
}

bool LinguisticVariable::covers(double x) const noexcept {
  return std::any_of(terms_.begin(), terms_.end(),
                     [x](const Term& t) { return t.mf.degree(x) > 0.0; });
}

std::optional<std::size_t> LinguisticVariable::index_of(std::string_view term) const noexcept {
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (terms_[i].name == term) return i;
  }
  return std::nullopt;
}

const MembershipFunction& LinguisticVariable::term(std::string_view name) const {
  if (auto i = index_of(name)) return terms_[*i].mf;
  throw ContractViolation("variable '" + name_ + "' has no term '" + std::string(name) + "'");
}

double LinguisticVariable::clamp(double x) const noexcept {
  if (std::isnan(x)) return universe_.hi;
  return std::clamp(x, universe_.lo, universe_.hi);
}

TermDegrees fuzzify(const LinguisticVariable& v, double x) {
  const double clamped = v.clamp(x);
  TermDegrees out;
  for (const auto& t : v.terms()) out.emplace(t.name, t.mf.degree(clamped));
  return out;
}

}  // namespace patrol::fuzzy
