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
#include "patrol/center/alarm.hpp"

#include <fstream>

#include "patrol/proto/kv.hpp"

namespace patrol::center {

const char* to_string(AlarmStatus s) {
  switch (s) {
    case AlarmStatus::quiet:
      return "QUIET";
    case AlarmStatus::active:
      return "ACTIVE";
    case AlarmStatus::acknowledged:
      return "ACKNOWLEDGED";
  }
  return "?";
}

AlarmMachine::AlarmMachine(std::filesystem::path lockdown_file) : file_(std::move(lockdown_file)) {}

AlarmTransition AlarmMachine::raise(const std::string& session_id,
                                    const proto::AlarmSignal& signal, double wall_now) {
  std::lock_guard lock(mu_);
  AlarmTransition out;
  state_.causes.push_back(signal.cause);
  if (state_.status != AlarmStatus::active) {
    LockdownRecord rec{session_id, signal.cause, signal.t_sim, signal.pose, wall_now};
    if (!file_.empty()) {
      proto::KvRecord kv;
      kv.set("kind", "lockdown");
      kv.set("session", session_id);
      kv.set("cause", proto::to_string(rec.cause));
      kv.set_double("t", rec.t_sim);
      kv.set_double("x", rec.pose.x);
      kv.set_double("y", rec.pose.y);
      kv.set_double("issued_at", rec.issued_at);
      kv.set("actuators", "doors_closed,siren_on");
      std::ofstream f(file_, std::ios::app);
      f << kv.encode() << '\n';
      f.flush();
      if (!f) storage_error_ = "cannot write " + file_.string();
    }
    lockdowns_.push_back(rec);
    state_.status = AlarmStatus::active;
    state_.cause = signal.cause;
    state_.raised_at = signal.t_sim;
    state_.lockdown_issued = true;
    state_.acknowledged_by.reset();
    out.changed = true;
    out.lockdown = rec;
  }
  out.state = state_;
  return out;
}

AlarmTransition AlarmMachine::acknowledge(const std::string& operator_id) {
  std::lock_guard lock(mu_);
  AlarmTransition out;
  if (state_.status != AlarmStatus::active) {
    out.reason = std::string("no active alarm (status ") + to_string(state_.status) + ")";
  } else {
    state_.status = AlarmStatus::acknowledged;
    state_.acknowledged_by = operator_id;
    out.changed = true;
  }
  out.state = state_;
  return out;
}

AlarmTransition AlarmMachine::clear() {
  std::lock_guard lock(mu_);
  AlarmTransition out;
  if (state_.status == AlarmStatus::active) {
    out.reason = "alarm is active; acknowledge it first";
  } else if (state_.status == AlarmStatus::acknowledged) {
    state_ = AlarmState{};
    out.changed = true;
  }
  out.state = state_;
  return out;
}

AlarmState AlarmMachine::state() const {
  std::lock_guard lock(mu_);
  return state_;
}

std::vector<LockdownRecord> AlarmMachine::lockdowns() const {
  std::lock_guard lock(mu_);
  return lockdowns_;
}

std::optional<std::string> AlarmMachine::storage_error() const {
  std::lock_guard lock(mu_);
  return storage_error_;
}

}  // namespace patrol::center
