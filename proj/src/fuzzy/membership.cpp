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
#include "patrol/fuzzy/membership.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace patrol::fuzzy {

namespace {

void require_ordered(std::span<const double> pts) {
  for (double p : pts) {
    if (!std::isfinite(p)) throw ConfigError("membership breakpoint is not finite");
  }
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (pts[i] < pts[i - 1]) {
      std::ostringstream os;
      os << "membership breakpoints must be non-decreasing (" << pts[i - 1] << " > " << pts[i]
         << ")";
      throw ConfigError(os.str());
    }
  }
}

}  // namespace

MembershipFunction::MembershipFunction(Kind kind, std::array<double, 4> given, double a,
                                       double b, double c, double d)
    : kind_(kind), given_(given), a_(a), b_(b), c_(c), d_(d) {}

MembershipFunction MembershipFunction::triangle(double a, double b, double c) {
  const std::array<double, 4> given{a, b, c, 0.0};
  require_ordered(std::span<const double>(given.data(), 3));
  return MembershipFunction(Kind::triangle, given, a, b, b, c);
}

MembershipFunction MembershipFunction::trapezoid(double a, double b, double c, double d) {
  const std::array<double, 4> given{a, b, c, d};
  require_ordered(given);
  return MembershipFunction(Kind::trapezoid, given, a, b, c, d);
}

double MembershipFunction::degree(double x) const noexcept {
  if (x >= b_ && x <= c_) return 1.0;
  if (x <= a_ || x >= d_) return 0.0;
  // a < x < b implies a < b, likewise for the falling flank.
  if (x < b_) return (x - a_) / (b_ - a_);
  return (d_ - x) / (d_ - c_);
}

double MembershipFunction::max_slope() const noexcept {
  double slope = 0.0;
  if (b_ > a_) slope = std::max(slope, 1.0 / (b_ - a_));
  if (d_ > c_) slope = std::max(slope, 1.0 / (d_ - c_));
  return slope;
}

std::string MembershipFunction::describe() const {
  std::ostringstream os;
  os << (kind_ == Kind::triangle ? "triangle(" : "trapezoid(");
  const auto pts = breakpoints();
  for (std::size_t i = 0; i < pts.size(); ++i) os << (i ? ", " : "") << pts[i];
  os << ")";
  return os.str();
}

}  // namespace patrol::fuzzy
