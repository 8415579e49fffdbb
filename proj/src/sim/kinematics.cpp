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
#include "patrol/sim/kinematics.hpp"

#include <algorithm>
#include <cmath>

namespace patrol::sim {

bool overlaps(const WorldMap& map, Vec2 center, double radius) {
  for (const auto& w : map.walls) {
    if (distance(center, w) < radius) return true;
  }
  for (const auto& o : map.obstacles) {
    if (const auto* c = std::get_if<Circle>(&o)) {
      if (norm(center - c->center) < radius + c->radius) return true;
    } else if (distance(center, std::get<Polygon>(o)) < radius) {
      return true;
    }
  }
  return false;
}

StepResult step(const WorldMap& map, const RobotState& state, const MotionCommand& cmd) {
  StepResult r{state, 0.0, false, false};
  if (cmd.is_stop()) return r;
  if (!(state.battery_remaining > 0.0)) {
    r.battery_out = true;
    return r;
  }

  if (cmd.is_turn()) {
    double delta = cmd.value;
    double elapsed = std::abs(delta) / state.speed_turn;
    if (elapsed > state.battery_remaining) {
      elapsed = state.battery_remaining;
      delta = std::copysign(elapsed * state.speed_turn, delta);
      r.battery_out = true;
    }
    r.state.pose.heading = normalize_degrees(state.pose.heading - delta);
    r.elapsed = elapsed;
    r.state.battery_remaining = r.battery_out ? 0.0 : state.battery_remaining - elapsed;
    return r;
  }

  const double wanted = cmd.value;
  double limit = wanted;
  const double affordable = state.battery_remaining * state.speed_forward;
  if (affordable < wanted) {
    limit = affordable;
    r.battery_out = true;
  }

  const Vec2 start = state.pose.position();
  const Vec2 dir = direction(state.pose.heading);
  double travelled = 0.0;
  if (overlaps(map, start, state.body_radius)) {
    r.collision = true;
  } else {
    const auto whole = static_cast<long>(std::floor(limit));
    for (long k = 1; k <= whole + 1; ++k) {
      const double s = std::min(static_cast<double>(k), limit);
      if (s <= travelled) break;
      if (overlaps(map, start + s * dir, state.body_radius)) {
        r.collision = true;
        break;
      }
      travelled = s;
    }
  }
  if (r.collision) r.battery_out = false;

  const Vec2 end = start + travelled * dir;
  r.state.pose.x = end.x;
  r.state.pose.y = end.y;
  r.state.odometer = state.odometer + travelled;
  r.elapsed = travelled / state.speed_forward;
  r.state.battery_remaining =
      r.battery_out ? 0.0 : std::max(0.0, state.battery_remaining - r.elapsed);
  if (r.battery_out) r.elapsed = state.battery_remaining;
  return r;
}

}  // namespace patrol::sim
