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

#include "patrol/fuzzy/config.hpp"

namespace patrol::scenario {

struct SurfacePoint {
  double front;
  double right;
  double alpha;
};

/// Avoidance angle over the input square, front-major. Both axes include
/// their end points. Throws std::invalid_argument unless step > 0.
std::vector<SurfacePoint> control_surface(const fuzzy::FuzzyConfig& cfg, double step);

/// CSV with header u2,u3,alpha_deg.
std::string surface_csv(const std::vector<SurfacePoint>& points);

}  // namespace patrol::scenario
