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

// Brute-force Mamdani reference for the avoidance controller. Deliberately
// shares no code with the library: breakpoints, the rule table and the
// centroid sum are all spelled out here.

#include <algorithm>
#include <array>

namespace patrol::testing {

struct OracleShape {
  double a, b, c, d;
};

inline double oracle_mu(const OracleShape& s, double x) {
  if (x < s.a || x > s.d) return 0.0;
  if (x >= s.b && x <= s.c) return 1.0;
  if (x < s.b) return (x - s.a) / (s.b - s.a);
  return (s.d - x) / (s.d - s.c);
}

// G, TB, X on [4, 100] cm.
inline constexpr std::array<OracleShape, 3> kOracleInputs{{
    {4, 4, 25, 45},
    {25, 45, 45, 70},
    {45, 70, 100, 100},
}};

// AI, K, DI, DV, DN on [-20, 60] degrees.
inline constexpr std::array<OracleShape, 5> kOracleOutputs{{
    {-20, -10, -10, 0},
    {-10, 0, 0, 10},
    {0, 15, 15, 30},
    {15, 30, 30, 45},
    {30, 45, 60, 60},
}};

enum OracleOut { kAI = 0, kK = 1, kDI = 2, kDV = 3, kDN = 4 };

// Row = front term (G, TB, X), column = right term (G, TB, X).
inline constexpr int kOracleTable[3][3] = {
    {kDN, kDI, kDV},
    {kAI, kK, kK},
    {kAI, kK, kK},
};

inline std::array<double, 5> oracle_strengths(double front_cm, double right_cm) {
  const double f = std::min(100.0, std::max(4.0, front_cm));
  const double r = std::min(100.0, std::max(4.0, right_cm));
  std::array<double, 5> s{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const double w = std::min(oracle_mu(kOracleInputs[i], f), oracle_mu(kOracleInputs[j], r));
      int out = kOracleTable[i][j];
      s[out] = std::max(s[out], w);
    }
  }
  return s;
}

// Centroid sum(x mu) / sum(mu) over x = -20 + k * step, k = 0..80/step.
// Points outside every active support add zero to both sums and are skipped.
inline double oracle_angle(double front_cm, double right_cm, double step = 0.001) {
  const auto s = oracle_strengths(front_cm, right_cm);
  double lo = 60.0, hi = -20.0;
  for (int t = 0; t < 5; ++t) {
    if (s[t] > 0) {
      lo = std::min(lo, kOracleOutputs[t].a);
      hi = std::max(hi, kOracleOutputs[t].d);
    }
  }
  const long n = static_cast<long>(80.0 / step + 0.5);
  const long k0 = std::max(0L, static_cast<long>((lo + 20.0) / step) - 1);
  const long k1 = std::min(n, static_cast<long>((hi + 20.0) / step) + 1);
  double num = 0.0, den = 0.0;
  for (long k = k0; k <= k1; ++k) {
    const double x = -20.0 + static_cast<double>(k) * step;
    double mu = 0.0;
    for (int t = 0; t < 5; ++t) {
      if (s[t] > 0) mu = std::max(mu, std::min(s[t], oracle_mu(kOracleOutputs[t], x)));
    }
    num += x * mu;
    den += mu;
  }
  return num / den;
}

}  // namespace patrol::testing
