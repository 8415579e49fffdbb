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
#include "patrol/center/agent_server.hpp"

#include <array>

#include "patrol/proto/frame_reader.hpp"

namespace patrol::center {

using namespace std::chrono_literals;

struct AgentServer::Connection {
  proto::Socket sock;
  std::mutex send_mu;
  std::thread thread;
  std::atomic<bool> done{false};

  bool send(const proto::Message& m) {
    std::lock_guard lock(send_mu);
    try {
      sock.send_message(m);
      return true;
    } catch (const std::exception&) {
      return false;
    }
  }
};

AgentServer::AgentServer(Center& center, const std::string& host, std::uint16_t port)
    : center_(center), listener_(host, port) {
  acceptor_ = std::thread([this] { accept_loop(); });
}

AgentServer::~AgentServer() { stop(); }

void AgentServer::accept_loop() {
  while (!stopping_) {
    proto::Socket s;
    try {
      s = listener_.accept(200ms);
    } catch (const std::exception&) {
      continue;
    }
    std::lock_guard lock(mu_);
    for (auto it = connections_.begin(); it != connections_.end();) {
      if (it->done) {
        it->thread.join();
        it = connections_.erase(it);
      } else {
        ++it;
      }
    }
    if (!s.valid()) continue;
    auto& c = connections_.emplace_back();
    c.sock = std::move(s);
    c.thread = std::thread([this, &c] {
      serve(c);
      c.done = true;
    });
  }
}

void AgentServer::serve(Connection& c) {
  proto::FrameReader reader;
  std::array<std::uint8_t, 16384> buf{};
  std::string session;
  bool finished = false;

  while (!stopping_) {
    long n = 0;
    try {
      n = c.sock.recv_some(buf, 200ms);
    } catch (const std::exception&) {
      break;
    }
    if (n == 0) break;
    if (n < 0) continue;
    reader.feed(std::span(buf.data(), static_cast<std::size_t>(n)));
    while (auto r = reader.next()) {
      if (finished) continue;
      if (!r->message) {
        if (!session.empty()) {
          center_.note(session, "decode_error",
                       std::string(proto::to_string(r->error->kind)) + ": " + r->error->detail);
        }
        continue;
      }
      const proto::Message& m = *r->message;
      if (session.empty()) {
        const auto* hello = std::get_if<proto::Hello>(&m);
        if (!hello) continue;  // nothing is accepted before Hello
        try {
          session = center_.open_session(*hello, [&c](const proto::Message& out) { return c.send(out); });
        } catch (const std::exception&) {
          c.sock.shutdown();
          return;
        }
        continue;
      }
      try {
        center_.ingest(session, m);
      } catch (const std::exception& e) {
        center_.note(session, "ingest_error", e.what());
      }
      if (std::holds_alternative<proto::Goodbye>(m)) {
        const std::uint64_t records = center_.close_session(session, "closed");
        c.send(proto::GoodbyeAck{records});
        finished = true;
      }
    }
  }
  if (!session.empty() && !finished) center_.close_session(session, "dropped");
  c.sock.shutdown();
}

void AgentServer::stop() {
  if (stopping_.exchange(true)) return;
  if (acceptor_.joinable()) acceptor_.join();
  listener_.close();
  std::lock_guard lock(mu_);
  for (auto& c : connections_) {
    if (c.thread.joinable()) c.thread.join();
  }
  connections_.clear();
}

}  // namespace patrol::center
