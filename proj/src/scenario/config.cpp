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
#include "patrol/scenario/config.hpp"

#include <cmath>
#include <fstream>

namespace patrol::scenario {

using nlohmann::json;
namespace fs = std::filesystem;

void ScenarioConfig::validate() const {
  if (map_path.empty()) throw ConfigError("scenario has no map");
  if (!fs::exists(map_path)) throw ConfigError("map not found: " + map_path.string());
  if (!(duration_limit_s > 0.0) || !std::isfinite(duration_limit_s)) {
    throw ConfigError("duration_limit_s must be positive");
  }
  if (sensors.rays_per_cone < 1) throw ConfigError("sensors.rays_per_cone must be >= 1");
  if (!(sensors.human_radius > 0.0)) throw ConfigError("sensors.human_radius must be positive");
  if (!(sensors.jitter_cm >= 0.0)) throw ConfigError("sensors.jitter_cm must be >= 0");
  try {
    fuzzy.validate();
    pilot.validate();
    robot.validate();
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  if (center) {
    if (center->host.empty()) throw ConfigError("center.host is empty");
    if (!(center->pace >= 0.0) || !(center->linger_s >= 0.0)) {
      throw ConfigError("center.pace and center.linger_s must be >= 0");
    }
    if (center->queue_limit == 0) throw ConfigError("center.queue_limit must be >= 1");
  }
}

json robot_to_json(const sim::RobotState& r) {
  json sonar = json::array();
  for (const auto& s : r.sonar) sonar.push_back({{"angle", s.angle}, {"half_width", s.half_width}});
  json hms = json::array();
  for (const auto& h : r.hms) {
    hms.push_back({{"angle", h.angle}, {"half_width", h.half_width}, {"range", h.range_cm}});
  }
  return {{"body_radius", r.body_radius},     {"battery", r.battery_remaining},
          {"speed_forward", r.speed_forward}, {"speed_turn", r.speed_turn},
          {"sonar", sonar},                   {"hms", hms}};
}

sim::RobotState robot_from_json(const json& j) {
  sim::RobotState r;
  r.body_radius = j.value("body_radius", r.body_radius);
  r.battery_remaining = j.value("battery", r.battery_remaining);
  r.speed_forward = j.value("speed_forward", r.speed_forward);
  r.speed_turn = j.value("speed_turn", r.speed_turn);
  if (j.contains("sonar")) {
    const json& s = j.at("sonar");
    if (!s.is_array() || s.size() != r.sonar.size()) {
      throw ConfigError("robot.sonar needs exactly 3 mounts (left, front, right)");
    }
    for (std::size_t i = 0; i < r.sonar.size(); ++i) {
      r.sonar[i].angle = s[i].value("angle", r.sonar[i].angle);
      r.sonar[i].half_width = s[i].value("half_width", r.sonar[i].half_width);
    }
  }
  if (j.contains("hms")) {
    const json& h = j.at("hms");
    if (!h.is_array() || h.size() != r.hms.size()) {
      throw ConfigError("robot.hms needs exactly 2 mounts (left, right)");
    }
    for (std::size_t i = 0; i < r.hms.size(); ++i) {
      r.hms[i].angle = h[i].value("angle", r.hms[i].angle);
      r.hms[i].half_width = h[i].value("half_width", r.hms[i].half_width);
      r.hms[i].range_cm = h[i].value("range", r.hms[i].range_cm);
    }
  }
  return r;
}

ScenarioConfig scenario_from_json(const json& j, const fs::path& base_dir) {
  ScenarioConfig c;
  try {
    if (!j.is_object()) throw ConfigError("scenario must be a JSON object");
    if (!j.contains("map")) throw ConfigError("scenario needs a 'map' path");
    fs::path map = j.at("map").get<std::string>();
    c.map_path = map.is_absolute() ? map : base_dir / map;
    c.duration_limit_s = j.value("duration_limit_s", c.duration_limit_s);
    c.seed = j.value("seed", c.seed);
    if (j.contains("output_dir")) {
      fs::path out = j.at("output_dir").get<std::string>();
      c.output_dir = out.is_absolute() ? out : base_dir / out;
    }
    if (j.contains("fuzzy")) c.fuzzy = fuzzy::fuzzy_config_from_json(j.at("fuzzy"));
    if (j.contains("pilot")) c.pilot = pilot::pilot_config_from_json(j.at("pilot"));
    if (j.contains("robot")) c.robot = robot_from_json(j.at("robot"));
    if (j.contains("sensors")) {
      const json& s = j.at("sensors");
      c.sensors.rays_per_cone = s.value("rays_per_cone", c.sensors.rays_per_cone);
      c.sensors.human_radius = s.value("human_radius", c.sensors.human_radius);
      c.sensors.jitter_cm = s.value("jitter_cm", c.sensors.jitter_cm);
    }
    if (j.contains("center") && !j.at("center").is_null()) {
      const json& e = j.at("center");
      CenterEndpoint ep;
      ep.host = e.value("host", ep.host);
      ep.port = e.value("port", ep.port);
      ep.agent_id = e.value("agent_id", ep.agent_id);
      ep.pace = e.value("pace", ep.pace);
      ep.linger_s = e.value("linger_s", ep.linger_s);
      ep.queue_limit = e.value("queue_limit", ep.queue_limit);
      c.center = ep;
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("scenario: ") + e.what());
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  c.sensors.seed = c.seed;
  c.validate();
  return c;
}

ScenarioConfig load_scenario(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open scenario " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  try {
    return scenario_from_json(j, path.parent_path());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

json to_json(const ScenarioConfig& cfg) {
  return {{"map", fs::absolute(cfg.map_path).lexically_normal().string()},
          {"duration_limit_s", cfg.duration_limit_s},
          {"seed", cfg.seed},
          {"fuzzy", fuzzy::to_json(cfg.fuzzy)},
          {"pilot", pilot::to_json(cfg.pilot)},
          {"robot", robot_to_json(cfg.robot)},
          {"sensors",
           {{"rays_per_cone", cfg.sensors.rays_per_cone},
            {"human_radius", cfg.sensors.human_radius},
            {"jitter_cm", cfg.sensors.jitter_cm}}}};
}

}  // namespace patrol::scenario
