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
#include "patrol/pilot/pilot.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "patrol/fuzzy/inference.hpp"

namespace patrol::pilot {

const char* to_string(Mode m) {
  switch (m) {
    case Mode::follow: return "FOLLOW";
    case Mode::avoid: return "AVOID";
    case Mode::alarm: return "ALARM";
    case Mode::done: return "DONE";
    case Mode::battery_out: return "BATTERY_OUT";
  }
  return "?";
}

Mode mode_from_string(const std::string& s) {
  for (Mode m : {Mode::follow, Mode::avoid, Mode::alarm, Mode::done, Mode::battery_out}) {
    if (s == to_string(m)) return m;
  }
  throw std::invalid_argument("unknown patrol mode '" + s + "'");
}

const char* to_string(AlarmCause c) {
  return c == AlarmCause::hms_left ? "HMS_LEFT" : "HMS_RIGHT";
}

const char* to_string(Intent i) {
  switch (i) {
    case Intent::follow: return "FOLLOW";
    case Intent::avoid: return "AVOID";
    case Intent::alarm: return "ALARM";
  }
  return "?";
}

void PilotConfig::validate() const {
  if (!(wall_setpoint > 0) || !(wall_deadband > 0) || !(follow_turn_step > 0) ||
      !(straight_step > 0) || !(avoid_deadband > 0) || end_detect_count <= 0 ||
      !(end_turn > 0)) {
    throw std::invalid_argument("pilot parameters must all be positive");
  }
  if (!(wall_lookahead >= 0.0) || !(corner_threshold > 0) || !(corner_turn_step > 0) ||
      avoid_hold < 0) {
    throw std::invalid_argument(
        "wall_lookahead and avoid_hold must be >= 0, corner parameters positive");
  }
  if (corner_turn_step > 180.0) throw std::invalid_argument("corner_turn_step exceeds 180");
  if (!(avoid_deadband < 20.0)) throw std::invalid_argument("avoid_deadband must be < 20");
  if (follow_turn_step > 180.0 || end_turn > 180.0) {
    throw std::invalid_argument("pilot turns must not exceed 180 degrees");
  }
}

PilotConfig pilot_config_from_json(const nlohmann::json& j) {
  PilotConfig c;
  c.wall_setpoint = j.value("wall_setpoint", c.wall_setpoint);
  c.wall_deadband = j.value("wall_deadband", c.wall_deadband);
  c.follow_turn_step = j.value("follow_turn_step", c.follow_turn_step);
  c.straight_step = j.value("straight_step", c.straight_step);
  c.avoid_deadband = j.value("avoid_deadband", c.avoid_deadband);
  c.end_detect_count = j.value("end_detect_count", c.end_detect_count);
  c.end_turn = j.value("end_turn", c.end_turn);
  c.wall_lookahead = j.value("wall_lookahead", c.wall_lookahead);
  c.corner_threshold = j.value("corner_threshold", c.corner_threshold);
  c.corner_turn_step = j.value("corner_turn_step", c.corner_turn_step);
  c.avoid_hold = j.value("avoid_hold", c.avoid_hold);
  c.validate();
  return c;
}

nlohmann::json to_json(const PilotConfig& c) {
  return {{"wall_setpoint", c.wall_setpoint},       {"wall_deadband", c.wall_deadband},
          {"follow_turn_step", c.follow_turn_step}, {"straight_step", c.straight_step},
          {"avoid_deadband", c.avoid_deadband},     {"end_detect_count", c.end_detect_count},
          {"end_turn", c.end_turn},                 {"wall_lookahead", c.wall_lookahead},
          {"corner_threshold", c.corner_threshold}, {"corner_turn_step", c.corner_turn_step},
          {"avoid_hold", c.avoid_hold}};
}

PatrolState start_patrol(const PilotConfig& cfg, int loops_completed) {
  cfg.validate();
  PatrolState s;
  s.config = cfg;
  s.loops_completed = loops_completed;
  return s;
}

std::string describe(const Event& e) {
  std::ostringstream os;
  std::visit(
      [&](const auto& ev) {
        using T = std::decay_t<decltype(ev)>;
        if constexpr (std::is_same_v<T, ModeChanged>) {
          os << "mode " << to_string(ev.from) << "->" << to_string(ev.to);
        } else if constexpr (std::is_same_v<T, AlarmRaised>) {
          os << "alarm";
          for (auto c : ev.causes) os << ' ' << to_string(c);
        } else if constexpr (std::is_same_v<T, EndDetected>) {
          os << "end-detected";
        } else {
          os << "loop-completed " << ev.loops;
        }
      },
      e);
  return os.str();
}

MotionCommand wall_follow_step(double left_cm, const PilotConfig& cfg) {
  const double error = left_cm - cfg.wall_setpoint;
  if (std::abs(error) <= cfg.wall_deadband) return MotionCommand::forward(cfg.straight_step);
  return MotionCommand::turn(error < 0 ? cfg.follow_turn_step : -cfg.follow_turn_step);
}

MotionCommand follow_step(double left_cm, double prev_left_cm, bool hold, const PilotConfig& cfg) {
  const bool have_rate = prev_left_cm >= sim::kSonarMin && prev_left_cm < sim::kSonarNoEcho &&
                         left_cm < sim::kSonarNoEcho;
  const double regulated =
      have_rate ? std::clamp(left_cm + cfg.wall_lookahead * (left_cm - prev_left_cm),
                             sim::kSonarMin, sim::kSonarNoEcho)
                : left_cm;
  const MotionCommand cmd = wall_follow_step(regulated, cfg);
  if (!cmd.is_turn() || cmd.value > 0) return cmd;
  if (hold) return MotionCommand::forward(cfg.straight_step);
  if (left_cm < sim::kSonarNoEcho && regulated > cfg.wall_setpoint + cfg.corner_threshold) {
    return MotionCommand::turn(-cfg.corner_turn_step);
  }
  return cmd;
}

Intent arbitrate(const SensorFrame& frame, double fuzzy_turn, const PilotConfig& cfg) {
  if (frame.hms.any()) return Intent::alarm;
  if (std::abs(fuzzy_turn) > cfg.avoid_deadband) return Intent::avoid;
  return Intent::follow;
}

TickResult patrol_tick(const PatrolState& state, const SensorFrame& frame,
                       const fuzzy::FuzzyConfig& fuzzy) {
  if (is_terminal(state.mode)) {
    throw ContractViolation(std::string("patrol_tick called in terminal mode ") +
                            to_string(state.mode));
  }
  const PilotConfig& cfg = state.config;
  TickResult r{state, MotionCommand::stop(), {}, 0.0};
  PatrolState& s = r.state;
  auto set_mode = [&](Mode m) {
    if (s.mode != m) {
      r.events.push_back(ModeChanged{s.mode, m});
      s.mode = m;
    }
  };
  auto emit = [&](MotionCommand cmd) {
    r.command = cmd;
    s.last_command = cmd;
    return r;
  };

  if (!(frame.battery_remaining > 0.0)) {
    s.pending = Pending::none;
    set_mode(Mode::battery_out);
    return emit(MotionCommand::stop());
  }

  if (frame.hms.any()) {
    AlarmRaised alarm{frame.t, {}, frame.pose};
    if (frame.hms.left) alarm.causes.push_back(AlarmCause::hms_left);
    if (frame.hms.right) alarm.causes.push_back(AlarmCause::hms_right);
    r.events.push_back(std::move(alarm));
    s.pending = Pending::none;
    set_mode(Mode::alarm);
    return emit(MotionCommand::stop());
  }

  const double left = frame.sonar.left;
  const double prev_left = s.prev_left;
  s.prev_left = left;
  s.no_echo_count = left >= sim::kSonarNoEcho ? s.no_echo_count + 1 : 0;
  const bool end_reached = s.no_echo_count == cfg.end_detect_count;

  switch (s.pending) {
    case Pending::final_forward:
      s.pending = Pending::none;
      s.loops_completed += 1;
      r.events.push_back(LoopCompleted{s.loops_completed});
      set_mode(Mode::done);
      return emit(MotionCommand::forward(cfg.straight_step));
    case Pending::forward_after_turn:
      s.pending = Pending::none;
      if (end_reached) {
        s.end_armed = true;
        r.events.push_back(EndDetected{frame.t});
      }
      return emit(MotionCommand::forward(cfg.straight_step));
    case Pending::none:
      break;
  }

  if (s.end_armed || end_reached) {
    if (!s.end_armed) r.events.push_back(EndDetected{frame.t});
    s.end_armed = false;
    s.pending = Pending::final_forward;
    return emit(MotionCommand::turn(cfg.end_turn));
  }

  double turn = 0.0;
  try {
    turn = fuzzy::avoidance_angle(frame.sonar.front, frame.sonar.right, fuzzy);
  } catch (const fuzzy::NoActivation&) {
    turn = 0.0;
  }
  r.fuzzy_turn = turn;

  if (arbitrate(frame, turn, cfg) == Intent::avoid) {
    s.pending = Pending::forward_after_turn;
    s.avoid_hold = cfg.avoid_hold;
    set_mode(Mode::avoid);
    return emit(MotionCommand::turn(std::clamp(turn, -180.0, 180.0)));
  }

  set_mode(Mode::follow);
  const MotionCommand cmd = follow_step(left, prev_left, s.avoid_hold > 0, cfg);
  if (s.avoid_hold > 0) --s.avoid_hold;
  if (cmd.is_turn()) s.pending = Pending::forward_after_turn;
  return emit(cmd);
}

}  // namespace patrol::pilot
