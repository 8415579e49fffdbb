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
#include "patrol/scenario/agent_link.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include "patrol/proto/frame_reader.hpp"
#include "patrol/sim/geometry.hpp"

namespace patrol::scenario {

using namespace std::chrono_literals;
using Clock = std::chrono::steady_clock;

namespace {

proto::Pose to_proto(const sim::Pose& p) { return {p.x, p.y, p.heading}; }

double lerp(double a, double b, double f) { return a + f * (b - a); }

}  // namespace

AgentLink::AgentLink(const CenterEndpoint& endpoint, std::string map_name)
    : endpoint_(endpoint), sock_(proto::connect_tcp(endpoint.host, endpoint.port, 3000ms)) {
  sock_.send_message(proto::Hello{endpoint_.agent_id, std::move(map_name)});
  connected_ = true;
  wall_start_ = Clock::now();
  sender_ = std::thread([this] { sender_loop(); });
  receiver_ = std::thread([this] { receiver_loop(); });
}

AgentLink::~AgentLink() {
  try {
    close("shutdown");
  } catch (...) {
  }
}

void AgentLink::enqueue(proto::Message m, bool bulk) {
  {
    std::lock_guard lock(mu_);
    if (!connected_) {
      ++dropped_;
      return;
    }
    if (bulk) {
      if (bulk_.size() >= endpoint_.queue_limit) {
        bulk_.pop_front();
        ++dropped_;
      }
      bulk_.push_back(std::move(m));
    } else {
      priority_.push_back(std::move(m));
    }
  }
  cv_.notify_all();
}

void AgentLink::sender_loop() {
  while (true) {
    proto::Message m;
    {
      std::unique_lock lock(mu_);
      cv_.wait(lock, [&] { return stopping_ || !priority_.empty() || !bulk_.empty(); });
      if (!priority_.empty()) {
        m = std::move(priority_.front());
        priority_.pop_front();
      } else if (!bulk_.empty()) {
        m = std::move(bulk_.front());
        bulk_.pop_front();
      } else {
        return;
      }
    }
    cv_.notify_all();
    try {
      sock_.send_message(m);
    } catch (const std::exception&) {
      std::lock_guard lock(mu_);
      connected_ = false;
      dropped_ += 1 + priority_.size() + bulk_.size();
      priority_.clear();
      bulk_.clear();
    }
  }
}

void AgentLink::receiver_loop() {
  proto::FrameReader reader;
  std::array<std::uint8_t, 4096> buf{};
  while (true) {
    {
      std::lock_guard lock(mu_);
      if (stopping_ && goodbye_acked_) return;
    }
    long n = 0;
    try {
      n = sock_.recv_some(buf, 100ms);
    } catch (const std::exception&) {
      n = 0;
    }
    if (n == 0) {
      {
        std::lock_guard lock(mu_);
        connected_ = false;
      }
      cv_.notify_all();
      return;
    }
    if (n < 0) {
      std::lock_guard lock(mu_);
      if (stopping_) return;
      continue;
    }
    reader.feed(std::span(buf.data(), static_cast<std::size_t>(n)));
    while (auto r = reader.next()) {
      if (!r->message) continue;
      if (auto* cmd = std::get_if<proto::OperatorCommand>(&*r->message)) {
        std::lock_guard lock(mu_);
        inbox_.push_back(*cmd);
      } else if (std::holds_alternative<proto::GoodbyeAck>(*r->message)) {
        {
          std::lock_guard lock(mu_);
          goodbye_acked_ = true;
        }
        cv_.notify_all();
      }
    }
  }
}

void AgentLink::log_command(const std::string& line) {
  std::lock_guard lock(mu_);
  log_.push_back(line);
}

std::vector<std::string> AgentLink::command_log() const {
  std::lock_guard lock(mu_);
  return log_;
}

Directive AgentLink::poll(double t, bool manual) {
  std::optional<proto::OperatorCommand> cmd;
  {
    std::lock_guard lock(mu_);
    if (!inbox_.empty()) {
      cmd = inbox_.front();
      inbox_.pop_front();
    }
  }
  if (!cmd) return {};

  Directive d;
  bool accepted = true;
  std::string detail;
  switch (cmd->kind) {
    case proto::CommandKind::stop:
      d.kind = Directive::Kind::halt;
      detail = "halted, manual control";
      break;
    case proto::CommandKind::start_patrol:
      d.kind = Directive::Kind::resume;
      detail = "patrol resumed";
      break;
    case proto::CommandKind::manual_turn:
    case proto::CommandKind::manual_forward:
      if (!manual) {
        accepted = false;
        detail = "not in manual control";
        break;
      }
      d.kind = Directive::Kind::drive;
      d.command = cmd->kind == proto::CommandKind::manual_turn
                      ? sim::MotionCommand::turn(cmd->value)
                      : sim::MotionCommand::forward(cmd->value);
      detail = "executing " + sim::to_string(d.command);
      break;
    case proto::CommandKind::camera_pan:
      detail = "camera pan noted";
      break;
    case proto::CommandKind::ack_alarm:
      detail = "alarm acknowledged";
      break;
  }
  std::ostringstream line;
  line << "t=" << t << " id=" << cmd->id << " kind=" << proto::to_string(cmd->kind)
       << " value=" << cmd->value << " operator=" << cmd->operator_id
       << (accepted ? " accepted " : " rejected ") << detail;
  log_command(line.str());
  enqueue(proto::CommandAck{cmd->id, accepted, detail}, false);
  return d;
}

void AgentLink::emit_samples(double t0, double t1, const sim::RobotState& before,
                             const sim::RobotState& after, const sim::SensorFrame& frame,
                             pilot::Mode mode) {
  const double span = t1 - t0;
  const double turn = sim::normalize_degrees(after.pose.heading - before.pose.heading);
  auto frac = [&](double at) { return span > 0.0 ? std::clamp((at - t0) / span, 0.0, 1.0) : 1.0; };

  for (double at = static_cast<double>(next_telemetry_) * kTelemetryPeriod; at <= t1 + 1e-9;
       at = static_cast<double>(++next_telemetry_) * kTelemetryPeriod) {
    const double f = frac(at);
    proto::Telemetry m;
    m.seq = next_telemetry_;
    m.t_sim = at;
    m.pose = {lerp(before.pose.x, after.pose.x, f), lerp(before.pose.y, after.pose.y, f),
              sim::normalize_degrees(before.pose.heading + f * turn)};
    m.sonar_left = frame.sonar.left;
    m.sonar_front = frame.sonar.front;
    m.sonar_right = frame.sonar.right;
    m.hms_left = frame.hms.left;
    m.hms_right = frame.hms.right;
    m.battery = std::max(0.0, lerp(before.battery_remaining, after.battery_remaining, f));
    m.mode = pilot::to_string(mode);
    m.odometer = lerp(before.odometer, after.odometer, f);
    enqueue(std::move(m), true);
  }
  for (double at = static_cast<double>(next_video_) * kVideoPeriod; at <= t1 + 1e-9;
       at = static_cast<double>(++next_video_) * kVideoPeriod) {
    enqueue(proto::VideoFrame{next_video_, at, proto::kVideoWidth, proto::kVideoHeight,
                              proto::video_pattern(next_video_)},
            true);
  }
}

void AgentLink::on_tick(const TickRecord& record, const sim::RobotState& before,
                        const sim::RobotState& after) {
  for (const auto& e : record.events) {
    if (const auto* a = std::get_if<pilot::AlarmRaised>(&e)) {
      for (const auto cause : a->causes) {
        enqueue(proto::AlarmSignal{a->t,
                                   cause == pilot::AlarmCause::hms_left ? proto::AlarmCause::hms_left
                                                                        : proto::AlarmCause::hms_right,
                                   to_proto(a->pose)},
                false);
      }
    }
  }
  const double t1 = record.t + record.elapsed;
  emit_samples(record.t, t1, before, after, record.frame, record.mode);
  // A mission-ending tick is usually a zero-length STOP; report the settled
  // state at the next sample instant so the final mode reaches the center.
  if (pilot::is_terminal(record.mode)) {
    emit_samples(t1, t1 + kTelemetryPeriod, after, after, record.frame, record.mode);
  }
  pace_to(t1);
}

void AgentLink::on_idle(double t, const sim::RobotState& state, pilot::Mode mode) {
  sim::SensorFrame frame;
  frame.t = t;
  frame.pose = state.pose;
  frame.battery_remaining = state.battery_remaining;
  emit_samples(t - kIdleStep, t, state, state, frame, mode);
  // Idle polling runs in real time even when the mission itself is unpaced.
  if (endpoint_.pace > 0.0) {
    pace_to(t);
  } else {
    std::this_thread::sleep_for(std::chrono::duration<double>(kIdleStep));
  }
}

void AgentLink::pace_to(double t) {
  if (endpoint_.pace <= 0.0) return;
  const auto target =
      wall_start_ + std::chrono::duration_cast<Clock::duration>(
                        std::chrono::duration<double>(t / endpoint_.pace));
  std::this_thread::sleep_until(target);
}

bool AgentLink::hold_open() {
  if (!linger_until_) {
    linger_until_ = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                       std::chrono::duration<double>(endpoint_.linger_s));
  }
  return connected_ && Clock::now() < *linger_until_;
}

void AgentLink::close(const std::string& reason) {
  if (closed_) return;
  closed_ = true;
  if (connected_) {
    // Goodbye travels on the priority queue, so let the backlog drain first.
    {
      std::unique_lock lock(mu_);
      cv_.wait_until(lock, Clock::now() + 10s,
                     [&] { return (priority_.empty() && bulk_.empty()) || !connected_; });
    }
    enqueue(proto::Goodbye{reason, next_telemetry_ == 0 ? 0 : next_telemetry_ - 1}, false);
    std::unique_lock lock(mu_);
    cv_.wait_until(lock, Clock::now() + 3s, [&] { return goodbye_acked_ || !connected_; });
  }
  {
    std::lock_guard lock(mu_);
    stopping_ = true;
    goodbye_acked_ = true;
  }
  cv_.notify_all();
  if (sender_.joinable()) sender_.join();
  sock_.shutdown();
  if (receiver_.joinable()) receiver_.join();
  sock_.close();
  connected_ = false;
}

}  // namespace patrol::scenario
