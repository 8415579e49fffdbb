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

#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "patrol/sim/geometry.hpp"

namespace patrol::sim {

/// Parse or validation failure in a map file. line() is 1-based, or 0 for
/// whole-map validation errors.
class MapError : public std::runtime_error {
 public:
  MapError(const std::string& source, int line, const std::string& what);
  int line() const noexcept { return line_; }

 private:
  int line_;
};

using Obstacle = std::variant<Circle, Polygon>;

/// A person who is present at position from appear_time for active_duration
/// seconds.
struct HumanEvent {
  double appear_time = 0.0;
  Vec2 position;
  double active_duration = 0.0;

  bool active_at(double t) const {
    return t >= appear_time && t < appear_time + active_duration;
  }
};

struct WorldMap {
  std::vector<Segment> walls;
  std::vector<Obstacle> obstacles;
  std::vector<HumanEvent> humans;
  Pose start;
  std::map<std::string, std::string> metadata;

  std::string name() const;

  /// Throws MapError naming the offending entity.
  void validate() const;
};

/// Line-oriented map text:
///
///   wall x1 y1 x2 y2
///   circle cx cy r
///   poly x1 y1 x2 y2 x3 y3 ...
///   human t x y duration
///   start x y heading
///   meta key value
///
/// Units are cm, seconds and degrees; '#' starts a comment.
WorldMap load_map(std::string_view text, const std::string& source = "<map>");
WorldMap load_map_file(const std::filesystem::path& path);

}  // namespace patrol::sim
