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

#include <filesystem>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "patrol/proto/messages.hpp"

namespace patrol::center {

enum class AlarmStatus { quiet, active, acknowledged };

const char* to_string(AlarmStatus s);

/// Building actuator intent written when an alarm goes active: doors
/// closed and sirens on.
struct LockdownRecord {
  std::string session_id;
  proto::AlarmCause cause = proto::AlarmCause::hms_left;
  double t_sim = 0.0;
  proto::Pose pose;
  double issued_at = 0.0;  // wall clock, seconds since the epoch
};

struct AlarmState {
  AlarmStatus status = AlarmStatus::quiet;
  std::optional<proto::AlarmCause> cause;
  double raised_at = 0.0;  // simulated time of the first signal
  bool lockdown_issued = false;
  std::vector<proto::AlarmCause> causes;  // every signal since the last reset
  std::optional<std::string> acknowledged_by;
};

/// Outcome of a state-machine request.
struct AlarmTransition {
  AlarmState state;
  bool changed = false;
  std::string reason;  // set when a request was refused
  std::optional<LockdownRecord> lockdown;
};

/// The alarm chain. All transitions are serialized through one lock.
/// Lockdown records are appended to lockdown_file when it is non-empty.
class AlarmMachine {
 public:
  explicit AlarmMachine(std::filesystem::path lockdown_file = {});

  /// QUIET or ACKNOWLEDGED to ACTIVE; an ACTIVE alarm only logs the cause.
  AlarmTransition raise(const std::string& session_id, const proto::AlarmSignal& signal,
                        double wall_now);
  /// ACTIVE to ACKNOWLEDGED; refused otherwise.
  AlarmTransition acknowledge(const std::string& operator_id);
  /// ACKNOWLEDGED to QUIET when patrol resumes; refused while ACTIVE.
  AlarmTransition clear();

  AlarmState state() const;
  std::vector<LockdownRecord> lockdowns() const;
  /// Last failure writing the lockdown file, if any.
  std::optional<std::string> storage_error() const;

 private:
  mutable std::mutex mu_;
  std::filesystem::path file_;
  AlarmState state_;
  std::vector<LockdownRecord> lockdowns_;
  std::optional<std::string> storage_error_;
};

}  // namespace patrol::center
