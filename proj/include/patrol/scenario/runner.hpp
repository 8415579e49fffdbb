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
#include <optional>
#include <string>
#include <vector>

#include "patrol/pilot/pilot.hpp"
#include "patrol/scenario/config.hpp"
#include "patrol/sim/kinematics.hpp"
#include "patrol/sim/world_map.hpp"

namespace patrol::scenario {

enum class Outcome { loop_complete, alarm, collision, timeout, battery_out };
const char* to_string(Outcome o);
Outcome outcome_from_string(const std::string& s);
/// Process exit code for patrolctl: 0, 10, 11, 12, 13 in declaration order.
int exit_code(Outcome o);

/// Who issued a tick's command.
enum class Source { autonomous, operator_ };
const char* to_string(Source s);

struct TickRecord {
  int index = 0;
  double t = 0.0;  // start of the command
  sim::SensorFrame frame;
  pilot::Mode mode = pilot::Mode::follow;  // after the decision
  sim::MotionCommand command;
  Source source = Source::autonomous;
  double fuzzy_turn = 0.0;
  double elapsed = 0.0;
  /// Ground-truth clearance to the nearest wall before the command.
  double clearance = 0.0;
  double odometer = 0.0;  // after the command
  bool collision = false;
  std::vector<pilot::Event> events;
};

struct RunSummary {
  Outcome outcome = Outcome::timeout;
  double sim_duration = 0.0;
  double distance = 0.0;
  double min_wall_distance = 0.0;
  double mean_wall_error = 0.0;  // mean |clearance - setpoint|
  int ticks = 0;
  int collisions = 0;
  int loops_completed = 0;
  sim::Pose final_pose;
  pilot::Mode final_mode = pilot::Mode::follow;
  double battery_remaining = 0.0;
  /// Telemetry dropped by a linked run's bounded queue.
  std::uint64_t dropped_messages = 0;
  double wall_seconds = 0.0;
};

/// Instruction from an attached operator channel.
struct Directive {
  enum class Kind { none, halt, resume, drive };
  Kind kind = Kind::none;
  sim::MotionCommand command;  // for drive
};

/// Optional observer and operator channel for a run. Headless runs use
/// none; the agent link implements it.
class RunHooks {
 public:
  virtual ~RunHooks() = default;
  /// Polled before every tick; operator input wins over the pilot.
  virtual Directive poll(double /*t*/, bool /*manual*/) { return {}; }
  /// A command finished: the state went from before to after over
  /// [record.t, record.t + record.elapsed].
  virtual void on_tick(const TickRecord& /*record*/, const sim::RobotState& /*before*/,
                       const sim::RobotState& /*after*/) {}
  /// Manual control with nothing to do; the clock advanced to t.
  virtual void on_idle(double /*t*/, const sim::RobotState& /*state*/, pilot::Mode /*mode*/) {}
  /// After the mission ends, true keeps the run alive (manual control only,
  /// plus START_PATROL).
  virtual bool hold_open() { return false; }
};

/// Simulated time that passes per idle poll under manual control.
inline constexpr double kIdleStep = 0.1;

/// Ground truth clearance for the regulation metric: distance from the
/// body to the nearest wall, and whether that point is at least margin cm
/// from the wall segment's ends (a straight stretch).
struct WallProximity {
  double clearance = 0.0;
  bool straight = false;
};
WallProximity wall_proximity(const sim::WorldMap& map, const sim::RobotState& state,
                             double margin);

/// One patrol mission from the map's start pose.
class Runner {
 public:
  Runner(sim::WorldMap map, ScenarioConfig cfg);

  /// Runs to an outcome; ticks are appended to the internal record list.
  RunSummary run(RunHooks* hooks = nullptr);

  const std::vector<TickRecord>& ticks() const { return ticks_; }
  const sim::WorldMap& map() const { return map_; }
  const ScenarioConfig& config() const { return cfg_; }

 private:
  sim::WorldMap map_;
  ScenarioConfig cfg_;
  std::vector<TickRecord> ticks_;
};

struct BatchReport {
  int loops_requested = 0;
  int loops_completed = 0;
  Outcome last_outcome = Outcome::battery_out;
  std::vector<double> loop_durations;
  double battery_start = 0.0;
  double battery_remaining = 0.0;
  double sim_duration = 0.0;
  int collisions = 0;
};

/// Repeats the loop from S on one battery until it runs out, a loop fails
/// or max_loops is reached. The pose returns to S between loops.
BatchReport run_batch(const sim::WorldMap& map, const ScenarioConfig& cfg, int max_loops);

}  // namespace patrol::scenario
