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
#include "patrol/scenario/trace.hpp"

#include <fstream>
#include <sstream>

namespace patrol::scenario {

using proto::KvRecord;

std::string trace_header(const ScenarioConfig& cfg, const std::string& map_name) {
  KvRecord r;
  r.set("kind", "header").set("format", kTraceFormat).set("map", map_name);
  r.set("config", to_json(cfg).dump());
  return r.encode();
}

std::string trace_line(const TickRecord& rec) {
  KvRecord r;
  const auto& f = rec.frame;
  r.set("kind", "tick")
      .set_int("i", rec.index)
      .set_double("t", rec.t)
      .set_double("x", f.pose.x)
      .set_double("y", f.pose.y)
      .set_double("h", f.pose.heading)
      .set_double("sl", f.sonar.left)
      .set_double("sf", f.sonar.front)
      .set_double("sr", f.sonar.right)
      .set_bool("hl", f.hms.left)
      .set_bool("hr", f.hms.right)
      .set_double("bat", f.battery_remaining)
      .set("mode", pilot::to_string(rec.mode))
      .set("cmd", sim::to_string(rec.command.kind))
      .set_double("val", rec.command.value)
      .set("src", to_string(rec.source))
      .set_double("alpha", rec.fuzzy_turn)
      .set_double("dt", rec.elapsed)
      .set_double("clear", rec.clearance)
      .set_double("odo", rec.odometer)
      .set_bool("coll", rec.collision);
  std::string events;
  for (const auto& e : rec.events) {
    if (!events.empty()) events += ';';
    events += pilot::describe(e);
  }
  r.set("ev", events);
  return r.encode();
}

std::string trace_summary(const RunSummary& s) {
  KvRecord r;
  r.set("kind", "summary")
      .set("outcome", to_string(s.outcome))
      .set_double("duration", s.sim_duration)
      .set_double("distance", s.distance)
      .set_double("min_wall", s.min_wall_distance)
      .set_double("mean_wall_error", s.mean_wall_error)
      .set_int("ticks", s.ticks)
      .set_int("collisions", s.collisions)
      .set_int("loops", s.loops_completed)
      .set_double("x", s.final_pose.x)
      .set_double("y", s.final_pose.y)
      .set_double("h", s.final_pose.heading)
      .set("mode", pilot::to_string(s.final_mode))
      .set_double("battery", s.battery_remaining);
  return r.encode();
}

std::string render_trace(const ScenarioConfig& cfg, const std::string& map_name,
                         const std::vector<TickRecord>& ticks, const RunSummary& summary) {
  std::string out = trace_header(cfg, map_name);
  out += '\n';
  for (const auto& t : ticks) {
    out += trace_line(t);
    out += '\n';
  }
  out += trace_summary(summary);
  out += '\n';
  return out;
}

TraceFile parse_trace(const std::string& text) {
  TraceFile tf;
  std::istringstream in(text);
  std::string line;
  int n = 0;
  bool have_summary = false;
  try {
    while (std::getline(in, line)) {
      ++n;
      if (line.empty()) continue;
      KvRecord r = KvRecord::parse(line);
      const std::string& kind = r.str("kind");
      if (n == 1) {
        if (kind != "header" || r.str("format") != kTraceFormat) {
          throw ConfigError("not a " + std::string(kTraceFormat) + " file");
        }
        tf.config = nlohmann::json::parse(r.str("config"));
      } else if (kind == "tick") {
        tf.ticks.push_back(std::move(r));
      } else if (kind == "summary") {
        tf.summary = std::move(r);
        have_summary = true;
      } else {
        throw ConfigError("unexpected record kind '" + kind + "'");
      }
    }
  } catch (const ConfigError& e) {
    throw ConfigError("trace line " + std::to_string(n) + ": " + e.what());
  } catch (const std::exception& e) {
    throw ConfigError("trace line " + std::to_string(n) + ": " + e.what());
  }
  if (n == 0) throw ConfigError("empty trace");
  if (!have_summary) throw ConfigError("trace has no summary line");
  return tf;
}

nlohmann::json summary_to_json(const RunSummary& s) {
  return {{"outcome", to_string(s.outcome)},
          {"sim_duration_s", s.sim_duration},
          {"distance_cm", s.distance},
          {"min_wall_distance_cm", s.min_wall_distance},
          {"mean_wall_error_cm", s.mean_wall_error},
          {"ticks", s.ticks},
          {"collisions", s.collisions},
          {"loops_completed", s.loops_completed},
          {"final_pose", {{"x", s.final_pose.x}, {"y", s.final_pose.y}, {"heading", s.final_pose.heading}}},
          {"final_mode", pilot::to_string(s.final_mode)},
          {"battery_remaining_s", s.battery_remaining},
          {"dropped_messages", s.dropped_messages},
          {"wall_seconds", s.wall_seconds}};
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << text;
  if (!out.flush()) throw ConfigError("write failed: " + path.string());
}

}  // namespace patrol::scenario
