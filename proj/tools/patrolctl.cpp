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
// patrolctl: run patrol scenarios headless or linked to a control center.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "patrol/proto/socket.hpp"
#include "patrol/scenario/agent_link.hpp"
#include "patrol/scenario/config.hpp"
#include "patrol/scenario/runner.hpp"
#include "patrol/scenario/surface.hpp"
#include "patrol/scenario/trace.hpp"
#include "patrol/sim/world_map.hpp"

namespace fs = std::filesystem;
namespace sc = patrol::scenario;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitUnreachable = 3;
constexpr int kExitMismatch = 1;

struct RunOptions {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string center;
  std::string agent_id;
  std::optional<double> pace;
  std::optional<double> linger;
};

sc::CenterEndpoint parse_endpoint(const std::string& text, sc::CenterEndpoint ep) {
  const auto colon = text.rfind(':');
  if (colon == std::string::npos) {
    ep.host = text;
    return ep;
  }
  ep.host = text.substr(0, colon);
  const int port = std::stoi(text.substr(colon + 1));
  if (port <= 0 || port > 65535) throw sc::ConfigError("center port out of range: " + text);
  ep.port = static_cast<std::uint16_t>(port);
  return ep;
}

sc::ScenarioConfig load(const RunOptions& o) {
  sc::ScenarioConfig cfg = sc::load_scenario(o.config);
  if (o.seed) {
    cfg.seed = *o.seed;
    cfg.sensors.seed = *o.seed;
  }
  if (!o.out.empty()) cfg.output_dir = o.out;
  if (!o.center.empty()) cfg.center = parse_endpoint(o.center, cfg.center.value_or(sc::CenterEndpoint{}));
  if (cfg.center) {
    if (!o.agent_id.empty()) cfg.center->agent_id = o.agent_id;
    if (o.pace) cfg.center->pace = *o.pace;
    if (o.linger) cfg.center->linger_s = *o.linger;
  }
  cfg.validate();
  return cfg;
}

void print_summary(const sc::RunSummary& s) {
  std::printf("outcome=%s duration=%.1fs distance=%.1fcm ticks=%d collisions=%d loops=%d "
              "final=(%.1f,%.1f,%.1f) min_wall=%.1f mean_wall_error=%.2f wall=%.3fs",
              sc::to_string(s.outcome), s.sim_duration, s.distance, s.ticks, s.collisions,
              s.loops_completed, s.final_pose.x, s.final_pose.y, s.final_pose.heading,
              s.min_wall_distance, s.mean_wall_error, s.wall_seconds);
  if (s.dropped_messages > 0) std::printf(" dropped=%llu", static_cast<unsigned long long>(s.dropped_messages));
  std::printf("\n");
}

int cmd_run(const RunOptions& o) {
  const sc::ScenarioConfig cfg = load(o);
  const patrol::sim::WorldMap map = patrol::sim::load_map_file(cfg.map_path);
  sc::Runner runner(map, cfg);

  sc::RunSummary summary;
  std::vector<std::string> command_log;
  if (cfg.center) {
    std::optional<sc::AgentLink> link;
    try {
      link.emplace(*cfg.center, map.name());
    } catch (const patrol::proto::NetError& e) {
      std::cerr << "patrolctl: center unreachable at " << cfg.center->host << ':'
                << cfg.center->port << ": " << e.what() << '\n';
      return kExitUnreachable;
    }
    summary = runner.run(&*link);
    link->close(sc::to_string(summary.outcome));
    summary.dropped_messages = link->dropped();
    command_log = link->command_log();
  } else {
    summary = runner.run();
  }

  fs::create_directories(cfg.output_dir);
  sc::write_file(cfg.output_dir / "trace.txt",
                 sc::render_trace(cfg, map.name(), runner.ticks(), summary));
  sc::write_file(cfg.output_dir / "summary.json", sc::summary_to_json(summary).dump(2) + "\n");
  if (cfg.center) {
    std::string text;
    for (const auto& line : command_log) text += line + "\n";
    sc::write_file(cfg.output_dir / "commands.log", text);
  }
  print_summary(summary);
  return sc::exit_code(summary.outcome);
}

int cmd_surface(const std::string& config, double step, const std::string& out) {
  patrol::fuzzy::FuzzyConfig fuzzy = patrol::fuzzy::FuzzyConfig::canonical();
  if (!config.empty()) fuzzy = sc::load_scenario(config).fuzzy;
  const std::string csv = sc::surface_csv(sc::control_surface(fuzzy, step));
  if (out.empty() || out == "-") {
    std::cout << csv;
  } else {
    sc::write_file(out, csv);
  }
  return 0;
}

int cmd_batch(const RunOptions& o, int loops, std::optional<double> battery) {
  sc::ScenarioConfig cfg = load(o);
  if (battery) cfg.robot.battery_remaining = *battery;
  const patrol::sim::WorldMap map = patrol::sim::load_map_file(cfg.map_path);
  const sc::BatchReport r = sc::run_batch(map, cfg, loops);

  nlohmann::json j = {{"loops_requested", r.loops_requested},
                      {"loops_completed", r.loops_completed},
                      {"last_outcome", sc::to_string(r.last_outcome)},
                      {"loop_durations", r.loop_durations},
                      {"battery_start", r.battery_start},
                      {"battery_remaining", r.battery_remaining},
                      {"sim_duration", r.sim_duration},
                      {"collisions", r.collisions}};
  fs::create_directories(cfg.output_dir);
  sc::write_file(cfg.output_dir / "batch.json", j.dump(2) + "\n");
  std::printf("loops=%d/%d last=%s battery=%.1f/%.1fs sim=%.1fs collisions=%d\n",
              r.loops_completed, r.loops_requested, sc::to_string(r.last_outcome),
              r.battery_remaining, r.battery_start, r.sim_duration, r.collisions);
  return 0;
}

int cmd_replay(const std::string& trace_path) {
  const std::string original = sc::read_file(trace_path);
  const sc::TraceFile trace = sc::parse_trace(original);
  sc::ScenarioConfig cfg = sc::scenario_from_json(trace.config, fs::path(trace_path).parent_path());
  cfg.validate();
  const patrol::sim::WorldMap map = patrol::sim::load_map_file(cfg.map_path);
  sc::Runner runner(map, cfg);
  const sc::RunSummary summary = runner.run();
  const std::string again = sc::render_trace(cfg, map.name(), runner.ticks(), summary);
  if (again == original) {
    std::printf("replay identical: %zu bytes, %d ticks, outcome %s\n", again.size(), summary.ticks,
                sc::to_string(summary.outcome));
    return 0;
  }
  std::istringstream a(original);
  std::istringstream b(again);
  std::string la;
  std::string lb;
  for (int line = 1;; ++line) {
    const bool ha = static_cast<bool>(std::getline(a, la));
    const bool hb = static_cast<bool>(std::getline(b, lb));
    if (!ha && !hb) break;
    if (!ha || !hb || la != lb) {
      std::printf("replay differs at line %d\n  recorded: %s\n  replayed: %s\n", line,
                  ha ? la.c_str() : "<eof>", hb ? lb.c_str() : "<eof>");
      break;
    }
  }
  return kExitMismatch;
}

void add_run_options(CLI::App* app, RunOptions& o) {
  app->add_option("-c,--config", o.config, "Scenario JSON")->required()->check(CLI::ExistingFile);
  app->add_option("--seed", o.seed, "Override the scenario seed");
  app->add_option("-o,--out", o.out, "Output directory");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Patrol robot scenario runner"};
  app.require_subcommand(1);

  RunOptions run_opts;
  auto* run = app.add_subcommand("run", "Run one patrol mission");
  add_run_options(run, run_opts);
  run->add_option("--center", run_opts.center, "Control center host:port")
      ->envname("PATROL_CENTER");
  run->add_option("--agent-id", run_opts.agent_id, "Agent name reported to the center");
  run->add_option("--pace", run_opts.pace, "Simulated seconds per wall second (0 = unpaced)")
      ->check(CLI::NonNegativeNumber);
  run->add_option("--linger", run_opts.linger, "Seconds to stay linked after the mission ends")
      ->check(CLI::NonNegativeNumber);

  std::string surface_config;
  double surface_step = 1.0;
  std::string surface_out;
  auto* surface = app.add_subcommand("surface", "Write the control surface as CSV");
  surface->add_option("-c,--config", surface_config, "Scenario JSON (fuzzy section used)")
      ->check(CLI::ExistingFile);
  surface->add_option("--step", surface_step, "Grid step in cm")->check(CLI::PositiveNumber);
  surface->add_option("-o,--out", surface_out, "CSV file (default stdout)");

  RunOptions batch_opts;
  int batch_loops = 100;
  std::optional<double> batch_battery;
  auto* batch = app.add_subcommand("batch", "Repeat the loop on one battery");
  add_run_options(batch, batch_opts);
  batch->add_option("--loops", batch_loops, "Maximum loops")->check(CLI::PositiveNumber);
  batch->add_option("--battery", batch_battery, "Battery budget in seconds")
      ->check(CLI::PositiveNumber);

  std::string trace_path;
  auto* replay = app.add_subcommand("replay", "Re-run a trace and compare bytes");
  replay->add_option("trace", trace_path, "Recorded trace.txt")->required()->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return cmd_run(run_opts);
    if (*surface) return cmd_surface(surface_config, surface_step, surface_out);
    if (*batch) return cmd_batch(batch_opts, batch_loops, batch_battery);
    if (*replay) return cmd_replay(trace_path);
  } catch (const sc::ConfigError& e) {
    std::cerr << "patrolctl: " << e.what() << '\n';
    return kExitConfig;
  } catch (const patrol::sim::MapError& e) {
    std::cerr << "patrolctl: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "patrolctl: " << e.what() << '\n';
    return kExitConfig;
  }
  return 0;
}
