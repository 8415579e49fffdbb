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
#include "patrol/sim/sensors.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <random>

namespace patrol::sim {

namespace {

double nearest_hit(const WorldMap& map, Vec2 origin, Vec2 dir, double t,
                   double human_radius) {
  double best = std::numeric_limits<double>::infinity();
  auto take = [&](std::optional<double> hit) {
    if (hit && *hit < best) best = *hit;
  };
  for (const auto& w : map.walls) take(ray_hit(origin, dir, w));
  for (const auto& o : map.obstacles) {
    std::visit([&](const auto& shape) { take(ray_hit(origin, dir, shape)); }, o);
  }
  for (const auto& h : map.humans) {
    if (h.active_at(t)) take(ray_hit(origin, dir, Circle{h.position, human_radius}));
  }
  return best;
}

double jitter(const SensorModel& model, double t, std::size_t mount) {
  std::seed_seq seq{static_cast<std::uint64_t>(model.seed), std::bit_cast<std::uint64_t>(t),
                    static_cast<std::uint64_t>(mount)};
  std::mt19937_64 rng(seq);
  return std::uniform_real_distribution<double>(-model.jitter_cm, model.jitter_cm)(rng);
}

}  // namespace

Vec2 mount_point(const RobotState& state, double angle) {
  return state.pose.position() + state.body_radius * direction(state.pose.heading + angle);
}

double sonar_read(const WorldMap& map, const RobotState& state, std::size_t mount, double t,
                  const SensorModel& model) {
  const SonarMount& m = state.sonar.at(mount);
  const Vec2 origin = mount_point(state, m.angle);
  const int rays = std::max(1, model.rays_per_cone);
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < rays; ++i) {
    const double offset =
        rays == 1 ? 0.0 : -m.half_width + 2.0 * m.half_width * i / static_cast<double>(rays - 1);
    const Vec2 dir = direction(state.pose.heading + m.angle + offset);
    best = std::min(best, nearest_hit(map, origin, dir, t, model.human_radius));
  }
  if (!(best <= kSonarNoEcho)) return kSonarNoEcho;
  if (model.jitter_cm > 0.0) best += jitter(model, t, mount);
  return std::clamp(best, kSonarMin, kSonarNoEcho);
}

bool hms_read(const WorldMap& map, const RobotState& state, std::size_t mount, double t) {
  const HmsMount& m = state.hms.at(mount);
  const Vec2 origin = mount_point(state, m.angle);
  for (const auto& h : map.humans) {
    if (!h.active_at(t)) continue;
    const Vec2 to = h.position - origin;
    const double dist = norm(to);
    if (dist > m.range_cm) continue;
    if (dist > 0.0) {
      const double bearing = rad2deg(std::atan2(to.y, to.x));
      if (std::abs(normalize_degrees(bearing - (state.pose.heading + m.angle))) > m.half_width) {
        continue;
      }
    }
    const Segment sight{origin, h.position};
    const bool blocked = std::any_of(map.walls.begin(), map.walls.end(),
                                     [&](const Segment& w) { return segments_intersect(sight, w); });
    if (!blocked) return true;
  }
  return false;
}

SensorFrame sense(const WorldMap& map, const RobotState& state, double t,
                  const SensorModel& model) {
  SensorFrame f;
  f.t = t;
  f.sonar.left = sonar_read(map, state, kSonarLeft, t, model);
  f.sonar.front = sonar_read(map, state, kSonarFront, t, model);
  f.sonar.right = sonar_read(map, state, kSonarRight, t, model);
  f.hms.left = hms_read(map, state, kHmsLeft, t);
  f.hms.right = hms_read(map, state, kHmsRight, t);
  f.battery_remaining = state.battery_remaining;
  f.pose = state.pose;
  return f;
}

double wall_clearance(const WorldMap& map, const RobotState& state) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& w : map.walls) best = std::min(best, distance(state.pose.position(), w));
  return best - state.body_radius;
}

}  // namespace patrol::sim
