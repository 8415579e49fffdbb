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

#include "patrol/sim/robot.hpp"
#include "patrol/sim/world_map.hpp"

namespace patrol::sim {

struct StepResult {
  RobotState state;
  double elapsed = 0.0;  // seconds
  bool collision = false;
  /// The battery ran out before the command finished; state is frozen at
  /// the depletion point.
  bool battery_out = false;
};

/// True when a disc at center overlaps a wall or obstacle. Touching is not
/// overlapping.
bool overlaps(const WorldMap& map, Vec2 center, double radius);

/// Executes one primitive. FORWARD is swept against the map in 1 cm
/// increments and stops at the last free position on contact; TURN rotates
/// in place. Elapsed time is charged to the battery; the odometer counts
/// distance actually travelled.
StepResult step(const WorldMap& map, const RobotState& state, const MotionCommand& cmd);

}  // namespace patrol::sim
