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
#include "patrol/sim/robot.hpp"

#include <cmath>
#include <sstream>

namespace patrol::sim {

void RobotState::validate() const {
  if (!(body_radius > 0.0)) throw std::invalid_argument("body radius must be positive");
  if (!(speed_forward > 0.0) || !(speed_turn > 0.0)) {
    throw std::invalid_argument("speeds must be positive");
  }
  if (!(battery_remaining >= 0.0)) throw std::invalid_argument("battery cannot be negative");
  for (const auto& s : sonar) {
    if (!(s.half_width >= 0.0) || s.half_width > 90.0) {
      throw std::invalid_argument("sonar half-width must be in [0, 90]");
    }
  }
  for (const auto& h : hms) {
    if (!(h.range_cm > 0.0) || !(h.half_width >= 0.0) || h.half_width > 180.0) {
      throw std::invalid_argument("HMS range must be positive, half-width in [0, 180]");
    }
  }
}

MotionCommand MotionCommand::turn(double degrees) {
  if (!(degrees >= -180.0 && degrees <= 180.0)) {
    throw std::invalid_argument("turn must be within [-180, 180] degrees");
  }
  return {Kind::turn, degrees};
}

MotionCommand MotionCommand::forward(double cm) {
  if (!(cm >= 0.0) || !std::isfinite(cm)) {
    throw std::invalid_argument("forward distance must be finite and non-negative");
  }
  return {Kind::forward, cm};
}

const char* to_string(MotionCommand::Kind kind) {
  switch (kind) {
    case MotionCommand::Kind::stop: return "STOP";
    case MotionCommand::Kind::turn: return "TURN";
    case MotionCommand::Kind::forward: return "FORWARD";
  }
  return "?";
}

std::string to_string(const MotionCommand& cmd) {
  std::ostringstream os;
  os << to_string(cmd.kind);
  if (!cmd.is_stop()) os << "(" << cmd.value << ")";
  return os.str();
}

}  // namespace patrol::sim
