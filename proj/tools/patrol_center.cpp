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
// patrol-center: control center service for patrol agents.

#include <atomic>
#include <csignal>
#include <iostream>
#include <optional>
#include <thread>

#include <CLI11.hpp>

#include "patrol/center/agent_server.hpp"
#include "patrol/center/center.hpp"
#include "patrol/center/operator_api.hpp"
#include "patrol/sim/world_map.hpp"

namespace {

std::atomic<bool> g_stop{false};

void on_signal(int) { g_stop = true; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Patrol control center"};
  std::string host = "0.0.0.0";
  std::uint16_t agent_port = 7710;
  std::uint16_t http_port = 7780;
  std::string storage = "center-data";
  std::string map_path;
  bool queue = false;
  app.add_option("--host", host, "Bind address")->envname("PATROL_CENTER_HOST");
  app.add_option("--agent-port", agent_port, "Agent protocol port")->envname("PATROL_AGENT_PORT");
  app.add_option("--http-port", http_port, "Operator HTTP port")->envname("PATROL_HTTP_PORT");
  app.add_option("--storage", storage, "Directory for session logs")->envname("PATROL_STORAGE");
  app.add_option("--map", map_path, "Map served to the console")
      ->envname("PATROL_MAP")
      ->check(CLI::ExistingFile);
  app.add_flag("--queue-offline", queue,
               "Queue operator commands while no agent is connected instead of rejecting them");
  CLI11_PARSE(app, argc, argv);

  try {
    std::optional<patrol::sim::WorldMap> map;
    if (!map_path.empty()) map = patrol::sim::load_map_file(map_path);

    patrol::center::CenterConfig cfg;
    cfg.storage_dir = storage;
    cfg.queue_when_offline = queue;
    patrol::center::Center center(cfg);
    patrol::center::AgentServer agents(center, host, agent_port);
    patrol::center::OperatorApi api(center, map);
    const auto bound = api.start(host, http_port);

    std::signal(SIGINT, on_signal);
    std::signal(SIGTERM, on_signal);
    std::cout << "patrol-center: agents on " << host << ':' << agents.port() << ", operators on http://"
              << host << ':' << bound << ", storage " << storage << std::endl;
    while (!g_stop) std::this_thread::sleep_for(std::chrono::milliseconds(200));

    std::cout << "patrol-center: shutting down" << std::endl;
    api.stop();
    agents.stop();
  } catch (const std::exception& e) {
    std::cerr << "patrol-center: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
