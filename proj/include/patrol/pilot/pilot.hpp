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
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "patrol/fuzzy/config.hpp"
#include "patrol/sim/robot.hpp"
#include "patrol/sim/sensors.hpp"

namespace patrol::pilot {

using sim::MotionCommand;
using sim::SensorFrame;

class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

enum class Mode { follow, avoid, alarm, done, battery_out };

const char* to_string(Mode m);
Mode mode_from_string(const std::string& s);  // throws std::invalid_argument
inline bool is_terminal(Mode m) {
  return m == Mode::alarm || m == Mode::done || m == Mode::battery_out;
}

struct PilotConfig {
  double wall_setpoint = 30.0;     // cm, left sonar
  double wall_deadband = 2.0;      // cm
  double follow_turn_step = 5.0;   // degrees
  double straight_step = 10.0;     // cm after every turn
  double avoid_deadband = 2.0;     // degrees
  int end_detect_count = 5;        // consecutive left no-echo reads
  double end_turn = 90.0;          // degrees, positive = right
  /// Wall following regulates on left + lookahead * (change in left over
  /// the last tick), which damps the weave a pure bang-bang law settles
  /// into. 0 regulates on the raw reading.
  double wall_lookahead = 3.0;
  /// A regulated reading this far beyond the setpoint means the wall fell
  /// away (convex corner); turn toward it by corner_turn_step instead.
  double corner_threshold = 25.0;  // cm
  double corner_turn_step = 15.0;  // degrees
  /// Decision ticks after an avoidance turn during which wall following may
  /// not turn back toward the wall, so the robot clears the obstacle first.
  int avoid_hold = 4;

  /// Throws std::invalid_argument unless every field is positive (the
  /// lookahead and hold may be 0) and avoid_deadband < 20.
  void validate() const;
};

PilotConfig pilot_config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const PilotConfig& cfg);

/// What the pilot does on the next TURN-free tick.
enum class Pending { none, forward_after_turn, final_forward };

struct PatrolState {
  Mode mode = Mode::follow;
  int no_echo_count = 0;
  int loops_completed = 0;
  MotionCommand last_command = MotionCommand::stop();
  Pending pending = Pending::none;
  /// End of loop detected on a tick that owed a straight step; the end turn
  /// goes out on the next tick.
  bool end_armed = false;
  /// Left reading from the previous tick; negative when there is none.
  double prev_left = -1.0;
  /// Remaining ticks of avoid_hold.
  int avoid_hold = 0;
  PilotConfig config;
};

/// Fresh controller in FOLLOW mode.
PatrolState start_patrol(const PilotConfig& cfg, int loops_completed = 0);

// ── events ──────────────────────────────────────────────────────────────────

struct ModeChanged {
  Mode from;
  Mode to;
};

enum class AlarmCause { hms_left, hms_right };
const char* to_string(AlarmCause c);

struct AlarmRaised {
  double t;
  std::vector<AlarmCause> causes;
  sim::Pose pose;
};

struct EndDetected {
  double t;
};

struct LoopCompleted {
  int loops;
};

using Event = std::variant<ModeChanged, AlarmRaised, EndDetected, LoopCompleted>;
std::string describe(const Event& e);

// ── decisions ───────────────────────────────────────────────────────────────

/// Bang-bang regulation of the left wall distance around the setpoint.
/// Too close turns right (positive), too far turns left (negative).
MotionCommand wall_follow_step(double left_cm, const PilotConfig& cfg);

/// Wall following as driven by the patrol loop: wall_follow_step on the
/// lookahead reading, with the corner and avoid-hold adjustments.
/// prev_left_cm < 4 means no previous reading.
MotionCommand follow_step(double left_cm, double prev_left_cm, bool hold, const PilotConfig& cfg);

enum class Intent { follow, avoid, alarm };
const char* to_string(Intent i);

/// HMS wins over everything, then a fuzzy turn beyond the deadband, then
/// wall following.
Intent arbitrate(const SensorFrame& frame, double fuzzy_turn, const PilotConfig& cfg);

struct TickResult {
  PatrolState state;
  MotionCommand command;
  std::vector<Event> events;
  /// Fuzzy turn computed on this tick, or 0 when the tick owed a step.
  double fuzzy_turn = 0.0;
};

/// One decision cycle. Throws ContractViolation in a terminal mode.
TickResult patrol_tick(const PatrolState& state, const SensorFrame& frame,
                       const fuzzy::FuzzyConfig& fuzzy);

}  // namespace patrol::pilot
