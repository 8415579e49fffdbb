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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "patrol/fuzzy/config.hpp"
#include "patrol/pilot/pilot.hpp"
#include "patrol/sim/robot.hpp"
#include "patrol/sim/sensors.hpp"

namespace patrol::scenario {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Where a linked run ships telemetry, and how it behaves while linked.
struct CenterEndpoint {
  std::string host = "127.0.0.1";
  std::uint16_t port = 7710;
  std::string agent_id = "patrol-1";
  /// Simulated seconds per wall-clock second; 0 runs flat out.
  double pace = 0.0;
  /// Wall-clock seconds to stay connected after the mission ends, taking
  /// operator commands.
  double linger_s = 0.0;
  /// Outgoing queue bound; the oldest telemetry is dropped beyond it.
  std::size_t queue_limit = 4096;
};

struct ScenarioConfig {
  std::filesystem::path map_path;
  fuzzy::FuzzyConfig fuzzy = fuzzy::FuzzyConfig::canonical();
  pilot::PilotConfig pilot;
  /// Physical defaults; the pose comes from the map's start entry.
  sim::RobotState robot;
  sim::SensorModel sensors;
  double duration_limit_s = 1200.0;
  std::uint64_t seed = 1;
  std::filesystem::path output_dir = "out";
  std::optional<CenterEndpoint> center;

  /// Throws ConfigError when the map is missing or a limit is out of range.
  void validate() const;
};

/// Relative paths in the document resolve against base_dir. Missing
/// sections keep their defaults.
ScenarioConfig scenario_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir);
ScenarioConfig load_scenario(const std::filesystem::path& path);

/// Everything that shapes a headless run (no output dir, no endpoint), with
/// the map path made absolute.
nlohmann::json to_json(const ScenarioConfig& cfg);

nlohmann::json robot_to_json(const sim::RobotState& r);
sim::RobotState robot_from_json(const nlohmann::json& j);

}  // namespace patrol::scenario
