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

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

namespace patrol::proto {

inline constexpr int kVideoWidth = 353;
inline constexpr int kVideoHeight = 288;

struct Pose {
  double x = 0.0;
  double y = 0.0;
  double heading = 0.0;
  friend bool operator==(const Pose&, const Pose&) = default;
};

/// Agent state sampled at 10 Hz of simulated time.
struct Telemetry {
  std::uint64_t seq = 0;
  double t_sim = 0.0;
  Pose pose;
  double sonar_left = 255.0;
  double sonar_front = 255.0;
  double sonar_right = 255.0;
  bool hms_left = false;
  bool hms_right = false;
  double battery = 0.0;
  std::string mode = "FOLLOW";
  double odometer = 0.0;
  friend bool operator==(const Telemetry&, const Telemetry&) = default;
};

/// Camera frame placeholder at 15 Hz; the payload is a synthetic pattern.
struct VideoFrame {
  std::uint64_t seq = 0;
  double t_sim = 0.0;
  int width = kVideoWidth;
  int height = kVideoHeight;
  std::string payload;
  friend bool operator==(const VideoFrame&, const VideoFrame&) = default;
};

/// Deterministic stub payload for a video frame.
std::string video_pattern(std::uint64_t seq);

enum class AlarmCause { hms_left, hms_right };
const char* to_string(AlarmCause c);

struct AlarmSignal {
  double t_sim = 0.0;
  AlarmCause cause = AlarmCause::hms_left;
  Pose pose;
  friend bool operator==(const AlarmSignal&, const AlarmSignal&) = default;
};

enum class CommandKind { start_patrol, stop, manual_turn, manual_forward, camera_pan, ack_alarm };
const char* to_string(CommandKind k);
/// Throws std::invalid_argument for an unknown name.
CommandKind command_kind_from_string(std::string_view name);
/// MANUAL_TURN, MANUAL_FORWARD and CAMERA_PAN carry a value.
bool has_value(CommandKind k);

struct OperatorCommand {
  std::uint64_t id = 0;
  CommandKind kind = CommandKind::stop;
  double value = 0.0;
  double issued_at = 0.0;  // wall clock, seconds since the epoch
  std::string operator_id;
  friend bool operator==(const OperatorCommand&, const OperatorCommand&) = default;
};

/// First message of an agent session.
struct Hello {
  std::string agent_id;
  std::string map_name;
  friend bool operator==(const Hello&, const Hello&) = default;
};

/// Agent is closing the session; the center answers with GoodbyeAck once
/// the session log is flushed.
struct Goodbye {
  std::string reason;
  std::uint64_t last_seq = 0;
  friend bool operator==(const Goodbye&, const Goodbye&) = default;
};

struct GoodbyeAck {
  std::uint64_t records = 0;
  friend bool operator==(const GoodbyeAck&, const GoodbyeAck&) = default;
};

/// Agent's report on an operator command: executed or refused.
struct CommandAck {
  std::uint64_t id = 0;
  bool accepted = false;
  std::string detail;
  friend bool operator==(const CommandAck&, const CommandAck&) = default;
};

using Message = std::variant<Telemetry, VideoFrame, AlarmSignal, OperatorCommand, Hello, Goodbye,
                             GoodbyeAck, CommandAck>;

enum class MessageType : std::uint8_t {
  telemetry = 1,
  video_frame = 2,
  alarm_signal = 3,
  operator_command = 4,
  hello = 5,
  goodbye = 6,
  goodbye_ack = 7,
  command_ack = 8,
};

MessageType type_of(const Message& m);
const char* to_string(MessageType t);

/// Empty when the message satisfies its invariants, otherwise the reason.
std::string check(const Message& m);

}  // namespace patrol::proto
