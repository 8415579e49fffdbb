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
#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "patrol/proto/socket.hpp"
#include "patrol/scenario/config.hpp"
#include "patrol/scenario/runner.hpp"

namespace patrol::scenario {

inline constexpr double kTelemetryPeriod = 0.1;
inline constexpr double kVideoPeriod = 1.0 / 15.0;

/// Live connection from a running scenario to the control center.
///
/// The simulation thread only enqueues: a sender thread drains a priority
/// queue (alarms, acks, session control) and a bounded bulk queue
/// (telemetry, video) that drops its oldest entry when full. A receiver
/// thread collects operator commands, which the runner polls before each
/// tick.
class AgentLink : public RunHooks {
 public:
  /// Connects and sends Hello. Throws proto::NetError when the center is
  /// unreachable.
  AgentLink(const CenterEndpoint& endpoint, std::string map_name);
  ~AgentLink() override;
  AgentLink(const AgentLink&) = delete;
  AgentLink& operator=(const AgentLink&) = delete;

  Directive poll(double t, bool manual) override;
  void on_tick(const TickRecord& record, const sim::RobotState& before,
               const sim::RobotState& after) override;
  void on_idle(double t, const sim::RobotState& state, pilot::Mode mode) override;
  bool hold_open() override;

  /// Sends Goodbye, waits briefly for the center's ack and stops the
  /// worker threads. Idempotent.
  void close(const std::string& reason);

  std::uint64_t dropped() const { return dropped_.load(); }
  std::uint64_t telemetry_sent() const { return next_telemetry_; }
  bool connected() const { return connected_.load(); }
  bool goodbye_acked() const { return goodbye_acked_.load(); }
  /// One line per operator command handled: decision and effect.
  std::vector<std::string> command_log() const;

 private:
  void enqueue(proto::Message m, bool bulk);
  void sender_loop();
  void receiver_loop();
  void emit_samples(double t0, double t1, const sim::RobotState& before,
                    const sim::RobotState& after, const sim::SensorFrame& frame, pilot::Mode mode);
  void pace_to(double t);
  void log_command(const std::string& line);

  CenterEndpoint endpoint_;
  proto::Socket sock_;
  std::thread sender_;
  std::thread receiver_;

  mutable std::mutex mu_;
  std::condition_variable cv_;
  std::deque<proto::Message> priority_;
  std::deque<proto::Message> bulk_;
  std::deque<proto::OperatorCommand> inbox_;
  std::vector<std::string> log_;
  bool stopping_ = false;

  std::atomic<bool> connected_{false};
  std::atomic<bool> goodbye_acked_{false};
  std::atomic<std::uint64_t> dropped_{0};

  std::uint64_t next_telemetry_ = 0;
  std::uint64_t next_video_ = 0;
  std::chrono::steady_clock::time_point wall_start_;
  std::optional<std::chrono::steady_clock::time_point> linger_until_;
  bool closed_ = false;
};

}  // namespace patrol::scenario
