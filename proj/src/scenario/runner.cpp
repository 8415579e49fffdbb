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
#include "patrol/scenario/runner.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "patrol/sim/sensors.hpp"

namespace patrol::scenario {
namespace {

struct Mission {
  RunSummary summary;
  sim::RobotState robot;
};

Outcome outcome_of(pilot::Mode m) {
  switch (m) {
    case pilot::Mode::alarm: return Outcome::alarm;
    case pilot::Mode::battery_out: return Outcome::battery_out;
    case pilot::Mode::done: return Outcome::loop_complete;
    default: return Outcome::timeout;
  }
}

// Drives one mission from robot's current state. The clock starts at t0;
// the duration limit counts from there.
Mission simulate(const sim::WorldMap& map, const ScenarioConfig& cfg, sim::RobotState robot,
                 int loops_before, double t0, RunHooks* hooks, std::vector<TickRecord>& ticks) {
  pilot::PatrolState ps = pilot::start_patrol(cfg.pilot, loops_before);
  double t = t0;
  double mission_start = t0;
  const double odo_start = robot.odometer;
  bool manual = false;
  bool finished = false;
  RunSummary s;
  double min_wall = std::numeric_limits<double>::infinity();
  double err_sum = 0.0;
  int err_n = 0;
  int collisions = 0;
  int index = ticks.empty() ? 0 : ticks.back().index + 1;

  auto finish = [&](Outcome o) {
    finished = true;
    manual = false;
    s.outcome = o;
    s.sim_duration = t - mission_start;
    s.distance = robot.odometer - odo_start;
    s.min_wall_distance = err_n > 0 ? min_wall : 0.0;
    s.mean_wall_error = err_n > 0 ? err_sum / err_n : 0.0;
    s.ticks = static_cast<int>(ticks.size());
    s.collisions = collisions;
    s.loops_completed = ps.loops_completed;
    s.final_pose = robot.pose;
    s.final_mode = ps.mode;
    s.battery_remaining = robot.battery_remaining;
  };

  // Executes rec.command and appends the record.
  auto execute = [&](TickRecord rec) {
    const sim::StepResult res = sim::step(map, robot, rec.command);
    rec.elapsed = res.elapsed;
    rec.collision = res.collision;
    rec.odometer = res.state.odometer;
    if (res.collision) ++collisions;
    if (hooks != nullptr) hooks->on_tick(rec, robot, res.state);
    robot = res.state;
    t += res.elapsed;
    ticks.push_back(std::move(rec));
    return res;
  };

  while (true) {
    if (!finished && t - mission_start >= cfg.duration_limit_s) finish(Outcome::timeout);
    if (finished && (hooks == nullptr || !hooks->hold_open())) break;

    const Directive d = hooks != nullptr ? hooks->poll(t, manual || finished) : Directive{};
    if (d.kind == Directive::Kind::halt) {
      if (!finished) manual = true;
    } else if (d.kind == Directive::Kind::resume) {
      if (finished) {
        ps = pilot::start_patrol(cfg.pilot, ps.loops_completed);
        mission_start = t;
        finished = false;
      }
      manual = false;
    } else if (d.kind == Directive::Kind::drive && (manual || finished)) {
      TickRecord rec;
      rec.index = index++;
      rec.t = t;
      rec.frame = sim::sense(map, robot, t, cfg.sensors);
      rec.clearance = sim::wall_clearance(map, robot);
      rec.mode = ps.mode;
      rec.command = d.command;
      rec.source = Source::operator_;
      execute(std::move(rec));
      continue;
    }

    if (manual || finished) {
      t += kIdleStep;
      if (hooks != nullptr) hooks->on_idle(t, robot, ps.mode);
      continue;
    }

    TickRecord rec;
    rec.index = index++;
    rec.t = t;
    rec.frame = sim::sense(map, robot, t, cfg.sensors);
    rec.clearance = sim::wall_clearance(map, robot);
    min_wall = std::min(min_wall, rec.clearance);
    err_sum += std::abs(rec.clearance - cfg.pilot.wall_setpoint);
    ++err_n;

    pilot::TickResult tr = pilot::patrol_tick(ps, rec.frame, cfg.fuzzy);
    ps = tr.state;
    rec.mode = ps.mode;
    rec.command = tr.command;
    rec.fuzzy_turn = tr.fuzzy_turn;
    rec.events = std::move(tr.events);

    const sim::StepResult res = execute(std::move(rec));
    if (res.collision) {
      finish(Outcome::collision);
    } else if (pilot::is_terminal(ps.mode)) {
      finish(outcome_of(ps.mode));
    }
  }
  return {s, robot};
}

}  // namespace

const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::loop_complete: return "LOOP_COMPLETE";
    case Outcome::alarm: return "ALARM";
    case Outcome::collision: return "COLLISION";
    case Outcome::timeout: return "TIMEOUT";
    case Outcome::battery_out: return "BATTERY_OUT";
  }
  return "?";
}

Outcome outcome_from_string(const std::string& s) {
  for (Outcome o : {Outcome::loop_complete, Outcome::alarm, Outcome::collision, Outcome::timeout,
                    Outcome::battery_out}) {
    if (s == to_string(o)) return o;
  }
  throw std::invalid_argument("unknown outcome '" + s + "'");
}

int exit_code(Outcome o) {
  switch (o) {
    case Outcome::loop_complete: return 0;
    case Outcome::alarm: return 10;
    case Outcome::collision: return 11;
    case Outcome::timeout: return 12;
    case Outcome::battery_out: return 13;
  }
  return 1;
}

const char* to_string(Source s) { return s == Source::autonomous ? "auto" : "operator"; }

WallProximity wall_proximity(const sim::WorldMap& map, const sim::RobotState& state,
                             double margin) {
  WallProximity out{std::numeric_limits<double>::infinity(), false};
  const sim::Vec2 p = state.pose.position();
  for (const auto& w : map.walls) {
    const double d = sim::distance(p, w) - state.body_radius;
    if (d < out.clearance) {
      out.clearance = d;
      const double len = w.length();
      const double along = len > 0.0 ? sim::dot(p - w.a, w.b - w.a) / len : 0.0;
      out.straight = along >= margin && len - along >= margin;
    }
  }
  return out;
}

Runner::Runner(sim::WorldMap map, ScenarioConfig cfg) : map_(std::move(map)), cfg_(std::move(cfg)) {
  map_.validate();
  cfg_.pilot.validate();
  cfg_.robot.validate();
}

RunSummary Runner::run(RunHooks* hooks) {
  const auto wall_start = std::chrono::steady_clock::now();
  ticks_.clear();
  sim::RobotState robot = cfg_.robot;
  robot.pose = map_.start;
  Mission m = simulate(map_, cfg_, robot, 0, 0.0, hooks, ticks_);
  m.summary.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - wall_start).count();
  return m.summary;
}

BatchReport run_batch(const sim::WorldMap& map, const ScenarioConfig& cfg, int max_loops) {
  if (max_loops < 1) throw std::invalid_argument("batch needs at least one loop");
  map.validate();
  BatchReport rep;
  rep.loops_requested = max_loops;
  sim::RobotState robot = cfg.robot;
  robot.pose = map.start;
  rep.battery_start = robot.battery_remaining;
  double t = 0.0;
  std::vector<TickRecord> ticks;
  while (rep.loops_completed < max_loops) {
    robot.pose = map.start;
    ticks.clear();
    Mission m = simulate(map, cfg, robot, rep.loops_completed, t, nullptr, ticks);
    robot = m.robot;
    t += m.summary.sim_duration;
    rep.collisions += m.summary.collisions;
    rep.last_outcome = m.summary.outcome;
    if (m.summary.outcome != Outcome::loop_complete) break;
    rep.loops_completed = m.summary.loops_completed;
    rep.loop_durations.push_back(m.summary.sim_duration);
  }
  rep.battery_remaining = robot.battery_remaining;
  rep.sim_duration = t;
  return rep;
}

}  // namespace patrol::scenario
