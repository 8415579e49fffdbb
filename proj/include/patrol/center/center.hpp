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

#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include <json.hpp>

#include "patrol/center/alarm.hpp"
#include "patrol/center/session_log.hpp"
#include "patrol/proto/messages.hpp"

namespace patrol::center {

struct CenterConfig {
  std::filesystem::path storage_dir = "center-data";
  /// Operator commands issued while no agent is connected are queued for
  /// the next session when set, and rejected otherwise.
  bool queue_when_offline = false;
  std::size_t stream_backlog = 4096;
};

enum class ControlMode { autonomous, manual };

const char* to_string(ControlMode m);

/// Annotation attached to a session: sequence gaps, duplicates, decode
/// errors and storage failures.
struct SessionEvent {
  double t_sim = 0.0;
  std::string kind;
  std::string detail;
};

struct SessionInfo {
  std::string id;
  std::string agent_id;
  std::string map_name;
  double started_at = 0.0;  // wall clock, seconds since the epoch
  std::string status = "open";
  std::uint64_t records = 0;
  std::optional<proto::Telemetry> latest;
  std::vector<SessionEvent> events;
};

struct CommandResult {
  bool accepted = false;
  bool queued = false;
  std::uint64_t id = 0;
  std::string reason;
};

/// One entry of the live stream.
struct StreamEvent {
  std::uint64_t seq = 0;
  std::string type;
  nlohmann::json data;
};

/// Sends a message to the agent of a session; false when the link is gone.
using AgentSink = std::function<bool(const proto::Message&)>;

/// Control-center state: sessions and their logs, the alarm chain,
/// operator control and the live event stream. Thread-safe.
class Center {
 public:
  explicit Center(CenterConfig cfg);
  ~Center();
  Center(const Center&) = delete;
  Center& operator=(const Center&) = delete;

  // Agent side.
  std::string open_session(const proto::Hello& hello, AgentSink sink);
  /// Appends to the session log and applies side effects. Storage errors
  /// are recorded and reported by health(); the session stays open.
  void ingest(const std::string& session_id, const proto::Message& m);
  void note(const std::string& session_id, const std::string& kind, const std::string& detail);
  /// Flushes and closes the log; returns the record count.
  std::uint64_t close_session(const std::string& session_id, const std::string& status);

  // Operator side.
  CommandResult submit(proto::OperatorCommand cmd);
  CommandResult acknowledge_alarm(const std::string& operator_id);

  // Queries.
  AlarmState alarm() const { return alarm_.state(); }
  std::vector<LockdownRecord> lockdowns() const { return alarm_.lockdowns(); }
  ControlMode control_mode() const;
  bool agent_connected() const;
  std::optional<std::string> active_session() const;
  std::vector<SessionInfo> sessions() const;
  std::optional<SessionInfo> session(const std::string& id) const;
  /// Stored telemetry of a session with t_sim in [from, to], in arrival order.
  std::vector<proto::Telemetry> history(const std::string& session_id, double from,
                                        double to) const;
  std::vector<std::string> operator_log() const;
  std::vector<std::string> storage_errors() const;
  const CenterConfig& config() const { return cfg_; }

  /// Events after cursor, waiting up to timeout for the first one. A
  /// cursor older than the backlog resumes at the oldest retained event.
  std::vector<StreamEvent> wait_events(std::uint64_t cursor, std::chrono::milliseconds timeout) const;
  std::uint64_t last_event() const;

 private:
  struct Session {
    SessionInfo info;
    std::unique_ptr<SessionLog> log;
    AgentSink sink;
    std::optional<std::uint64_t> last_seq;
    std::vector<proto::Telemetry> telemetry;
    mutable std::shared_mutex data_mu;  // guards info and telemetry for readers
    std::mutex ingest_mu;               // serializes ingestion
  };

  static std::shared_ptr<Session> recover(const std::filesystem::path& path);
  std::shared_ptr<Session> find(const std::string& id) const;
  std::shared_ptr<Session> connected_session() const;
  void publish(std::string type, nlohmann::json data);
  void log_operator(const std::string& line);
  void storage_failure(const std::string& what);
  bool forward(const proto::OperatorCommand& cmd);
  void on_alarm(const std::string& session_id, const proto::AlarmSignal& a);

  CenterConfig cfg_;
  AlarmMachine alarm_;

  mutable std::mutex mu_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::optional<std::string> active_;
  ControlMode mode_ = ControlMode::autonomous;
  std::deque<proto::OperatorCommand> pending_;
  std::uint64_t next_command_ = 1;
  std::uint64_t next_session_ = 1;
  std::vector<std::string> operator_log_;
  std::vector<std::string> storage_errors_;
  std::ofstream operator_file_;

  mutable std::mutex stream_mu_;
  mutable std::condition_variable stream_cv_;
  std::deque<StreamEvent> stream_;
  std::uint64_t stream_seq_ = 0;
};

nlohmann::json to_json(const proto::Telemetry& t);
nlohmann::json to_json(const AlarmState& a);
nlohmann::json to_json(const LockdownRecord& r);
nlohmann::json to_json(const SessionInfo& s);

}  // namespace patrol::center
