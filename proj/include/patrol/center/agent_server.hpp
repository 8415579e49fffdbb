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
#include <list>
#include <mutex>
#include <string>
#include <thread>

#include "patrol/center/center.hpp"
#include "patrol/proto/socket.hpp"

namespace patrol::center {

/// Accepts agent connections on the protocol port and feeds each session
/// into the center, one thread per connection.
class AgentServer {
 public:
  AgentServer(Center& center, const std::string& host, std::uint16_t port);
  ~AgentServer();
  AgentServer(const AgentServer&) = delete;
  AgentServer& operator=(const AgentServer&) = delete;

  std::uint16_t port() const { return listener_.port(); }
  void stop();

 private:
  struct Connection;

  void accept_loop();
  void serve(Connection& c);

  Center& center_;
  proto::Listener listener_;
  std::atomic<bool> stopping_{false};
  std::thread acceptor_;
  std::mutex mu_;
  std::list<Connection> connections_;
};

}  // namespace patrol::center
