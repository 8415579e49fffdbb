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
#include <stdexcept>
#include <string>

#include "patrol/sim/geometry.hpp"

namespace patrol::sim {

/// Sonar on the body perimeter, angle relative to the heading
/// (counter-clockwise positive).
struct SonarMount {
  double angle = 0.0;
  double half_width = 20.0;
};

/// Human motion sensor: presence within range_cm inside a cone.
struct HmsMount {
  double angle = 0.0;
  double half_width = 45.0;
  double range_cm = 150.0;
};

enum SonarIndex : std::size_t { kSonarLeft = 0, kSonarFront = 1, kSonarRight = 2 };
enum HmsIndex : std::size_t { kHmsLeft = 0, kHmsRight = 1 };

struct RobotState {
  Pose pose;
  double body_radius = 18.0;
  double battery_remaining = 5400.0;  // seconds of motion
  double speed_forward = 10.0;        // cm/s
  double speed_turn = 30.0;           // deg/s
  std::array<SonarMount, 3> sonar{{{90.0, 20.0}, {0.0, 20.0}, {-60.0, 20.0}}};
  std::array<HmsMount, 2> hms{{{30.0, 45.0, 150.0}, {-30.0, 45.0, 150.0}}};
  double odometer = 0.0;

  /// Throws std::invalid_argument when a physical parameter is out of range.
  void validate() const;
};

/// One discrete motion primitive. TURN angles follow the avoidance
/// controller's convention: positive turns right (clockwise), so the pose
/// heading decreases by the turn angle.
struct MotionCommand {
  enum class Kind { stop, turn, forward };

  Kind kind = Kind::stop;
  double value = 0.0;  // degrees for turn, cm for forward

  static MotionCommand stop() { return {Kind::stop, 0.0}; }
  static MotionCommand turn(double degrees);
  static MotionCommand forward(double cm);

  bool is_turn() const { return kind == Kind::turn; }
  bool is_forward() const { return kind == Kind::forward; }
  bool is_stop() const { return kind == Kind::stop; }

  friend bool operator==(const MotionCommand&, const MotionCommand&) = default;
};

const char* to_string(MotionCommand::Kind kind);
std::string to_string(const MotionCommand& cmd);

}  // namespace patrol::sim
