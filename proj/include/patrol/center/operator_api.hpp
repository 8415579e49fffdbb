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

#include <atomic>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <thread>

#include <json.hpp>

#include "patrol/center/center.hpp"
#include "patrol/sim/world_map.hpp"

namespace httplib {
class Server;
}

namespace patrol::center {

/// Map geometry as served to the console.
nlohmann::json map_to_json(const sim::WorldMap& map);

/// HTTP operator interface: status, history, map, live stream (server-sent
/// events) and command submission. Routes are listed in docs/api.md.
class OperatorApi {
 public:
  OperatorApi(Center& center, std::optional<sim::WorldMap> map);
  ~OperatorApi();
  OperatorApi(const OperatorApi&) = delete;
  OperatorApi& operator=(const OperatorApi&) = delete;

  /// Binds and serves on a background thread; port 0 picks a free port.
  /// Returns the bound port. Throws std::runtime_error when binding fails.
  std::uint16_t start(const std::string& host, std::uint16_t port);
  void stop();

 private:
  void install_routes();

  Center& center_;
  std::optional<sim::WorldMap> map_;
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
  std::shared_ptr<std::atomic<bool>> stopping_ = std::make_shared<std::atomic<bool>>(false);
};

}  // namespace patrol::center
