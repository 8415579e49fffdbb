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
#include "patrol/proto/messages.hpp"

#include <cmath>
#include <stdexcept>
#include <type_traits>

namespace patrol::proto {
namespace {

constexpr std::size_t kPatternBytes = 256;
constexpr std::size_t kMaxPayload = 512 * 1024;
constexpr std::size_t kMaxText = 256;

bool finite(const Pose& p) {
  return std::isfinite(p.x) && std::isfinite(p.y) && std::isfinite(p.heading);
}

bool sonar_ok(double v) { return v >= 4.0 && v <= 255.0; }

bool mode_ok(const std::string& m) {
  if (m.empty() || m.size() > 32) return false;
  for (const char c : m) {
    if (!((c >= 'A' && c <= 'Z') || c == '_')) return false;
  }
  return true;
}

}  // namespace

std::string video_pattern(std::uint64_t seq) {
  std::string out(kPatternBytes, '\0');
  std::uint64_t x = seq * 0x9E3779B97F4A7C15ULL + 1;
  for (std::size_t i = 0; i < out.size(); ++i) {
    x ^= x << 13;
    x ^= x >> 7;
    x ^= x << 17;
    out[i] = static_cast<char>(x & 0xFF);
  }
  return out;
}

const char* to_string(AlarmCause c) { return c == AlarmCause::hms_left ? "HMS_LEFT" : "HMS_RIGHT"; }

const char* to_string(CommandKind k) {
  switch (k) {
    case CommandKind::start_patrol: return "START_PATROL";
    case CommandKind::stop: return "STOP";
    case CommandKind::manual_turn: return "MANUAL_TURN";
    case CommandKind::manual_forward: return "MANUAL_FORWARD";
    case CommandKind::camera_pan: return "CAMERA_PAN";
    case CommandKind::ack_alarm: return "ACK_ALARM";
  }
  return "?";
}

CommandKind command_kind_from_string(std::string_view name) {
  for (auto k : {CommandKind::start_patrol, CommandKind::stop, CommandKind::manual_turn,
                 CommandKind::manual_forward, CommandKind::camera_pan, CommandKind::ack_alarm}) {
    if (name == to_string(k)) return k;
  }
  throw std::invalid_argument("unknown command kind '" + std::string(name) + "'");
}

bool has_value(CommandKind k) {
  return k == CommandKind::manual_turn || k == CommandKind::manual_forward ||
         k == CommandKind::camera_pan;
}

MessageType type_of(const Message& m) {
  return static_cast<MessageType>(m.index() + 1);
}

const char* to_string(MessageType t) {
  switch (t) {
    case MessageType::telemetry: return "TELEMETRY";
    case MessageType::video_frame: return "VIDEO_FRAME";
    case MessageType::alarm_signal: return "ALARM_SIGNAL";
    case MessageType::operator_command: return "OPERATOR_COMMAND";
    case MessageType::hello: return "HELLO";
    case MessageType::goodbye: return "GOODBYE";
    case MessageType::goodbye_ack: return "GOODBYE_ACK";
    case MessageType::command_ack: return "COMMAND_ACK";
  }
  return "?";
}

std::string check(const Message& m) {
  return std::visit(
      [](const auto& msg) -> std::string {
        using T = std::decay_t<decltype(msg)>;
        if constexpr (std::is_same_v<T, Telemetry>) {
          if (!std::isfinite(msg.t_sim) || !finite(msg.pose)) return "non-finite telemetry";
          if (!sonar_ok(msg.sonar_left) || !sonar_ok(msg.sonar_front) ||
              !sonar_ok(msg.sonar_right)) {
            return "sonar reading outside [4,255]";
          }
          if (!(msg.battery >= 0.0) || !std::isfinite(msg.battery)) return "bad battery";
          if (!(msg.odometer >= 0.0) || !std::isfinite(msg.odometer)) return "bad odometer";
          if (!mode_ok(msg.mode)) return "bad mode";
        } else if constexpr (std::is_same_v<T, VideoFrame>) {
          if (msg.width != kVideoWidth || msg.height != kVideoHeight) return "video must be 353x288";
          if (!std::isfinite(msg.t_sim)) return "non-finite video time";
          if (msg.payload.size() > kMaxPayload) return "video payload too large";
        } else if constexpr (std::is_same_v<T, AlarmSignal>) {
          if (!std::isfinite(msg.t_sim) || !finite(msg.pose)) return "non-finite alarm";
        } else if constexpr (std::is_same_v<T, OperatorCommand>) {
          if (!std::isfinite(msg.value) || !std::isfinite(msg.issued_at)) return "non-finite command";
          if (!has_value(msg.kind) && msg.value != 0.0) return "command takes no value";
          if ((msg.kind == CommandKind::manual_turn || msg.kind == CommandKind::camera_pan) &&
              std::abs(msg.value) > 180.0) {
            return "angle outside [-180,180]";
          }
          if (msg.kind == CommandKind::manual_forward && msg.value < 0.0) {
            return "negative forward distance";
          }
          if (msg.operator_id.size() > kMaxText) return "operator id too long";
        } else if constexpr (std::is_same_v<T, Hello>) {
          if (msg.agent_id.empty()) return "empty agent id";
          if (msg.agent_id.size() > kMaxText || msg.map_name.size() > kMaxText) return "name too long";
        } else if constexpr (std::is_same_v<T, Goodbye>) {
          if (msg.reason.size() > kMaxText) return "reason too long";
        } else if constexpr (std::is_same_v<T, CommandAck>) {
          if (msg.detail.size() > kMaxText) return "detail too long";
        }
        return {};
      },
      m);
}

}  // namespace patrol::proto
