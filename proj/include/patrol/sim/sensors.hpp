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
#include <cstdint>

#include "patrol/sim/robot.hpp"
#include "patrol/sim/world_map.hpp"

namespace patrol::sim {

inline constexpr double kSonarMin = 4.0;
inline constexpr double kSonarNoEcho = 255.0;

struct SensorModel {
  int rays_per_cone = 9;
  double human_radius = 25.0;
  /// Uniform +/- jitter in cm; 0 disables noise. The jitter is a pure
  /// function of (seed, t, mount), so sensing stays deterministic.
  double jitter_cm = 0.0;
  std::uint64_t seed = 0;
};

struct SonarTriple {
  double left = kSonarNoEcho;
  double front = kSonarNoEcho;
  double right = kSonarNoEcho;
};

struct HmsPair {
  bool left = false;
  bool right = false;

  bool any() const { return left || right; }
};

struct SensorFrame {
  double t = 0.0;
  SonarTriple sonar;
  HmsPair hms;
  double battery_remaining = 0.0;
  Pose pose;  // ground truth, for logging only
};

/// Point on the body perimeter at angle (relative to heading).
Vec2 mount_point(const RobotState& state, double angle);

/// Fan-beam range reading in [4, 255]; 255 means no echo. Walls, obstacles
/// and humans active at t reflect. Throws std::out_of_range for a bad index.
double sonar_read(const WorldMap& map, const RobotState& state, std::size_t mount, double t,
                  const SensorModel& model = {});

/// True when an active human is in range, inside the field and not hidden
/// behind a wall.
bool hms_read(const WorldMap& map, const RobotState& state, std::size_t mount, double t);

SensorFrame sense(const WorldMap& map, const RobotState& state, double t,
                  const SensorModel& model = {});

/// Ground-truth clearance between the body perimeter and the nearest wall
/// segment (cm); infinity when the map has no walls.
double wall_clearance(const WorldMap& map, const RobotState& state);

}  // namespace patrol::sim
