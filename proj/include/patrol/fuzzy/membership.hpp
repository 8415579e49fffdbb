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

#include <array>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>

namespace patrol::fuzzy {

/// Raised when a fuzzy configuration (breakpoints, universes, rule tables)
/// fails validation. Always thrown at construction time, never while
/// evaluating.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a caller breaks an operation contract, e.g. passes a term
/// name the rule base does not know.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Piecewise-linear fuzzy set: a triangle (a, b, c) or a trapezoid
/// (a, b, c, d). A triangle is stored as the trapezoid (a, b, b, c), so the
/// core is always [b, c] and the support is [a, d].
///
/// Equal adjacent breakpoints make the corresponding flank a vertical step;
/// evaluation never divides by a zero-width segment.
class MembershipFunction {
 public:
  enum class Kind { triangle, trapezoid };

  static MembershipFunction triangle(double a, double b, double c);
  static MembershipFunction trapezoid(double a, double b, double c, double d);

  Kind kind() const noexcept { return kind_; }

  /// Breakpoints as given at construction: 3 for a triangle, 4 for a trapezoid.
  std::span<const double> breakpoints() const noexcept {
    return {given_.data(), kind_ == Kind::triangle ? std::size_t{3} : std::size_t{4}};
  }

  double support_lo() const noexcept { return a_; }
  double support_hi() const noexcept { return d_; }
  double core_lo() const noexcept { return b_; }
  double core_hi() const noexcept { return c_; }

  /// Membership degree in [0, 1]. Any x is legal.
  double degree(double x) const noexcept;

  /// Largest absolute slope over the two flanks; zero-width flanks are steps
  /// and do not count.
  double max_slope() const noexcept;

  std::string describe() const;

 private:
  MembershipFunction(Kind kind, std::array<double, 4> given, double a, double b, double c,
                     double d);

  Kind kind_;
  std::array<double, 4> given_;
  double a_, b_, c_, d_;
};

inline double membership(const MembershipFunction& mf, double x) noexcept {
  return mf.degree(x);
}

}  // namespace patrol::fuzzy
