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
#include <gtest/gtest.h>

#include <fstream>

#include "patrol/scenario/config.hpp"
#include "patrol/scenario/runner.hpp"
#include "patrol/scenario/surface.hpp"
#include "patrol/scenario/trace.hpp"
#include "patrol/sim/world_map.hpp"

namespace patrol::scenario {
namespace {

namespace fs = std::filesystem;
const fs::path kData = PATROL_DATA_DIR;

ScenarioConfig config(const std::string& name) { return load_scenario(kData / "config" / (name + ".json")); }

sim::WorldMap map_of(const ScenarioConfig& cfg) { return sim::load_map_file(cfg.map_path); }

fs::path temp_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("patrol_scenario_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

// ---- config --------------------------------------------------------------------

TEST(Config, ShippedScenariosLoad) {
  for (const char* n : {"baseline", "obstacle", "intruder", "thin_edge", "narrow_right", "endurance"}) {
    const ScenarioConfig cfg = config(n);
    EXPECT_NO_THROW(cfg.validate()) << n;
    EXPECT_TRUE(fs::exists(cfg.map_path)) << n;
  }
  EXPECT_EQ(config("endurance").robot.battery_remaining, 5400.0);
}

TEST(Config, ErrorsNameTheProblem) {
  const fs::path dir = temp_dir("config");
  std::ofstream(dir / "bad.json") << "{ \"map\": ";
  try {
    load_scenario(dir / "bad.json");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("bad.json"), std::string::npos);
  }
  std::ofstream(dir / "nomap.json") << R"({"map": "missing.map"})";
  EXPECT_THROW(load_scenario(dir / "nomap.json"), ConfigError);
  EXPECT_THROW(load_scenario(dir / "absent.json"), ConfigError);
  EXPECT_THROW(scenario_from_json(nlohmann::json::array(), dir), ConfigError);
  EXPECT_THROW(scenario_from_json({{"map", (kData / "maps/corridor_g2.map").string()},
                                   {"duration_limit_s", -1}},
                                  dir)
                   .validate(),
               ConfigError);
}

TEST(Config, JsonRoundTrip) {
  ScenarioConfig cfg = config("obstacle");
  cfg.seed = 17;
  cfg.pilot.avoid_hold = 2;
  cfg.robot.speed_turn = 45.0;
  cfg.sensors.jitter_cm = 1.5;
  const ScenarioConfig back = scenario_from_json(to_json(cfg), "/");
  EXPECT_EQ(to_json(back), to_json(cfg));
  EXPECT_EQ(back.sensors.seed, 17u);
}

// ---- runs ----------------------------------------------------------------------

TEST(Runner, BaselineCompletesLoop) {
  const ScenarioConfig cfg = config("baseline");
  Runner r(map_of(cfg), cfg);
  const RunSummary s = r.run();
  EXPECT_EQ(s.outcome, Outcome::loop_complete);
  EXPECT_EQ(s.collisions, 0);
  EXPECT_EQ(s.loops_completed, 1);
  EXPECT_EQ(s.ticks, static_cast<int>(r.ticks().size()));
  EXPECT_GT(s.distance, 5000.0);
}

TEST(Runner, IntruderStopsForGood) {
  const ScenarioConfig cfg = config("intruder");
  Runner r(map_of(cfg), cfg);
  const RunSummary s = r.run();
  EXPECT_EQ(s.outcome, Outcome::alarm);
  const auto& ticks = r.ticks();
  const auto alarm = std::find_if(ticks.begin(), ticks.end(), [](const TickRecord& t) {
    return std::any_of(t.events.begin(), t.events.end(), [](const pilot::Event& e) {
      return std::holds_alternative<pilot::AlarmRaised>(e);
    });
  });
  ASSERT_NE(alarm, ticks.end());
  for (auto it = alarm; it != ticks.end(); ++it) EXPECT_TRUE(it->command.is_stop());
}

TEST(Runner, ExpectedFailuresEndCleanly) {
  for (const char* n : {"thin_edge", "narrow_right"}) {
    const ScenarioConfig cfg = config(n);
    Runner r(map_of(cfg), cfg);
    const RunSummary s = r.run();
    EXPECT_TRUE(s.outcome == Outcome::collision || s.outcome == Outcome::timeout) << n;
  }
}

TEST(Runner, TimeoutHonoured) {
  ScenarioConfig cfg = config("baseline");
  cfg.duration_limit_s = 60.0;
  Runner r(map_of(cfg), cfg);
  const RunSummary s = r.run();
  EXPECT_EQ(s.outcome, Outcome::timeout);
  EXPECT_GE(s.sim_duration, 60.0);
  EXPECT_LT(s.sim_duration, 70.0);
}

TEST(Runner, BatteryOutMidLoop) {
  ScenarioConfig cfg = config("baseline");
  cfg.robot.battery_remaining = 100.0;
  Runner r(map_of(cfg), cfg);
  const RunSummary s = r.run();
  EXPECT_EQ(s.outcome, Outcome::battery_out);
  EXPECT_EQ(s.battery_remaining, 0.0);
}

TEST(Runner, JitteredRunsDependOnSeedOnly) {
  ScenarioConfig cfg = config("baseline");
  cfg.sensors.jitter_cm = 2.0;
  cfg.sensors.seed = 5;
  auto trace_of = [](const ScenarioConfig& c) {
    Runner r(sim::load_map_file(c.map_path), c);
    const RunSummary s = r.run();
    return render_trace(c, "x", r.ticks(), s);
  };
  const std::string a = trace_of(cfg);
  EXPECT_EQ(a, trace_of(cfg));
  ScenarioConfig other = cfg;
  other.sensors.seed = 6;
  EXPECT_NE(a, trace_of(other));
}

TEST(Runner, WallProximityStraightFlag) {
  const sim::WorldMap m = sim::load_map_file(kData / "maps/corridor_g2.map");
  sim::RobotState s;
  s.pose = {800, -48, 0};
  WallProximity w = wall_proximity(m, s, 100.0);
  EXPECT_NEAR(w.clearance, 30.0, 1e-9);
  EXPECT_TRUE(w.straight);
  s.pose = {1450, -48, 0};
  EXPECT_FALSE(wall_proximity(m, s, 100.0).straight);
}

TEST(Batch, LoopsUntilBatteryRunsOut) {
  ScenarioConfig cfg = config("baseline");
  cfg.robot.battery_remaining = 1500.0;
  const BatchReport r = run_batch(map_of(cfg), cfg, 10);
  EXPECT_EQ(r.loops_completed, 2);
  EXPECT_EQ(r.last_outcome, Outcome::battery_out);
  ASSERT_EQ(r.loop_durations.size(), 2u);
  EXPECT_NEAR(r.loop_durations[0], r.loop_durations[1], 1e-9);
  EXPECT_EQ(r.collisions, 0);
  const BatchReport capped = run_batch(map_of(cfg), cfg, 1);
  EXPECT_EQ(capped.loops_completed, 1);
  EXPECT_EQ(capped.last_outcome, Outcome::loop_complete);
}

// ---- operator hooks --------------------------------------------------------------

class ScriptedOperator : public RunHooks {
 public:
  Directive poll(double t, bool manual) override {
    polls_manual.push_back(manual);
    if (step == 0 && t >= 50.0) {
      ++step;
      return {Directive::Kind::halt, {}};
    }
    if (step == 1 && manual) {
      ++step;
      return {Directive::Kind::drive, sim::MotionCommand::forward(50)};
    }
    if (step == 2) {
      ++step;
      return {Directive::Kind::none, {}};
    }
    if (step == 3) {
      ++step;
      return {Directive::Kind::resume, {}};
    }
    return {};
  }
  void on_tick(const TickRecord& rec, const sim::RobotState&, const sim::RobotState&) override {
    seen.push_back(rec);
  }
  void on_idle(double, const sim::RobotState&, pilot::Mode) override { ++idles; }

  int step = 0;
  int idles = 0;
  std::vector<bool> polls_manual;
  std::vector<TickRecord> seen;
};

TEST(Hooks, OperatorCommandWinsAndIsTraced) {
  const ScenarioConfig cfg = config("baseline");
  Runner r(map_of(cfg), cfg);
  ScriptedOperator op;
  const RunSummary s = r.run(&op);
  EXPECT_EQ(s.outcome, Outcome::loop_complete);
  EXPECT_EQ(op.seen.size(), r.ticks().size());
  const auto it = std::find_if(r.ticks().begin(), r.ticks().end(),
                               [](const TickRecord& t) { return t.source == Source::operator_; });
  ASSERT_NE(it, r.ticks().end());
  EXPECT_EQ(it->command, sim::MotionCommand::forward(50));
  EXPECT_GE(it->t, 50.0);
  EXPECT_EQ(op.idles, 2);  // the halt itself and the empty poll after the drive
  const std::string trace = render_trace(cfg, "corridor_g2", r.ticks(), s);
  EXPECT_NE(trace.find("cmd=FORWARD val=50 src=operator"), std::string::npos);
}

// ---- trace -----------------------------------------------------------------------

TEST(Trace, RenderParse) {
  const ScenarioConfig cfg = config("obstacle");
  Runner r(map_of(cfg), cfg);
  const RunSummary s = r.run();
  const std::string text = render_trace(cfg, "corridor_obstacle", r.ticks(), s);
  const TraceFile t = parse_trace(text);
  EXPECT_EQ(t.config, to_json(cfg));
  ASSERT_EQ(t.ticks.size(), r.ticks().size());
  EXPECT_EQ(t.summary.str("outcome"), "LOOP_COMPLETE");
  EXPECT_EQ(t.summary.integer("ticks"), s.ticks);
  int avoid = 0;
  for (const auto& k : t.ticks) avoid += k.str("mode") == "AVOID";
  EXPECT_GT(avoid, 0);
  // Numbers survive exactly.
  EXPECT_EQ(t.ticks[5].num("x"), r.ticks()[5].frame.pose.x);
  EXPECT_THROW(parse_trace("kind=tick i=0\n"), ConfigError);
  EXPECT_THROW(parse_trace(""), ConfigError);
}

TEST(Trace, FilesRoundTrip) {
  const fs::path dir = temp_dir("trace");
  write_file(dir / "a.txt", "hello\n");
  EXPECT_EQ(read_file(dir / "a.txt"), "hello\n");
  EXPECT_THROW(read_file(dir / "missing.txt"), std::runtime_error);
}

// ---- control surface ----------------------------------------------------------------

TEST(Surface, GridAndCsv) {
  const auto pts = control_surface(fuzzy::FuzzyConfig::canonical(), 1.0);
  ASSERT_EQ(pts.size(), 97u * 97u);
  EXPECT_EQ(pts.front().front, 4.0);
  EXPECT_EQ(pts.front().right, 4.0);
  EXPECT_EQ(pts[1].right, 5.0);
  EXPECT_EQ(pts.back().front, 100.0);
  for (const auto& p : pts) {
    if (p.front >= 70 && p.right >= 70) {
      EXPECT_EQ(p.alpha, 0.0);
    }
    EXPECT_GE(p.alpha, -20.0);
    EXPECT_LE(p.alpha, 60.0);
  }
  const std::string csv = surface_csv(pts);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "u2,u3,alpha_deg");
  EXPECT_EQ(static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')), pts.size() + 1);
  EXPECT_THROW(control_surface(fuzzy::FuzzyConfig::canonical(), 0.0), std::invalid_argument);
}

TEST(OutcomeNames, RoundTripAndExitCodes) {
  for (const auto o : {Outcome::loop_complete, Outcome::alarm, Outcome::collision, Outcome::timeout,
                       Outcome::battery_out}) {
    EXPECT_EQ(outcome_from_string(to_string(o)), o);
  }
  EXPECT_EQ(exit_code(Outcome::loop_complete), 0);
  EXPECT_EQ(exit_code(Outcome::alarm), 10);
  EXPECT_EQ(exit_code(Outcome::battery_out), 13);
}

}  // namespace
}  // namespace patrol::scenario
