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
#include "patrol/center/center.hpp"

#include <algorithm>
#include <cstdio>
#include <regex>

#include "patrol/proto/kv.hpp"

namespace patrol::center {

namespace {

using nlohmann::json;

std::int64_t wall_us() {
  return std::chrono::duration_cast<std::chrono::microseconds>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

double wall_s() { return static_cast<double>(wall_us()) * 1e-6; }

json pose_json(const proto::Pose& p) { return {{"x", p.x}, {"y", p.y}, {"heading", p.heading}}; }

std::string session_name(std::uint64_t n) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "s%04llu", static_cast<unsigned long long>(n));
  return buf;
}

}  // namespace

const char* to_string(ControlMode m) {
  return m == ControlMode::autonomous ? "AUTONOMOUS" : "MANUAL";
}

json to_json(const proto::Telemetry& t) {
  return {{"seq", t.seq},
          {"t", t.t_sim},
          {"pose", pose_json(t.pose)},
          {"sonar", {{"left", t.sonar_left}, {"front", t.sonar_front}, {"right", t.sonar_right}}},
          {"hms", {{"left", t.hms_left}, {"right", t.hms_right}}},
          {"battery", t.battery},
          {"mode", t.mode},
          {"odometer", t.odometer}};
}

json to_json(const AlarmState& a) {
  json causes = json::array();
  for (const auto c : a.causes) causes.push_back(proto::to_string(c));
  return {{"status", to_string(a.status)},
          {"cause", a.cause ? json(proto::to_string(*a.cause)) : json(nullptr)},
          {"raised_at", a.raised_at},
          {"lockdown_issued", a.lockdown_issued},
          {"causes", causes},
          {"acknowledged_by", a.acknowledged_by ? json(*a.acknowledged_by) : json(nullptr)}};
}

json to_json(const LockdownRecord& r) {
  return {{"session", r.session_id},
          {"cause", proto::to_string(r.cause)},
          {"t", r.t_sim},
          {"pose", pose_json(r.pose)},
          {"issued_at", r.issued_at},
          {"actuators", {"doors_closed", "siren_on"}}};
}

json to_json(const SessionInfo& s) {
  json events = json::array();
  for (const auto& e : s.events) {
    events.push_back({{"t", e.t_sim}, {"kind", e.kind}, {"detail", e.detail}});
  }
  return {{"id", s.id},
          {"agent", s.agent_id},
          {"map", s.map_name},
          {"started_at", s.started_at},
          {"status", s.status},
          {"records", s.records},
          {"latest", s.latest ? to_json(*s.latest) : json(nullptr)},
          {"events", events}};
}

Center::Center(CenterConfig cfg) : cfg_(std::move(cfg)), alarm_(cfg_.storage_dir / "lockdown.log") {
  std::error_code ec;
  std::filesystem::create_directories(cfg_.storage_dir, ec);
  if (ec) throw StorageError("cannot create " + cfg_.storage_dir.string() + ": " + ec.message());
  // Sessions left by an earlier run are served read-only and numbering
  // continues after them.
  static const std::regex pattern(R"(s(\d+)\.plog)");
  for (const auto& entry : std::filesystem::directory_iterator(cfg_.storage_dir)) {
    std::smatch m;
    const std::string name = entry.path().filename().string();
    if (!std::regex_match(name, m, pattern)) continue;
    next_session_ = std::max<std::uint64_t>(next_session_, std::stoull(m[1].str()) + 1);
    try {
      sessions_[name.substr(0, name.size() - 5)] = recover(entry.path());
    } catch (const StorageError& e) {
      storage_errors_.push_back(e.what());
    }
  }
  operator_file_.open(cfg_.storage_dir / "operator.log", std::ios::app);
  if (!operator_file_) throw StorageError("cannot open operator log in " + cfg_.storage_dir.string());
}

Center::~Center() {
  std::lock_guard lock(mu_);
  for (auto& [id, s] : sessions_) {
    std::lock_guard ingest(s->ingest_mu);
    if (s->log) s->log->close();
  }
}

std::shared_ptr<Center::Session> Center::recover(const std::filesystem::path& path) {
  auto s = std::make_shared<Session>();
  const auto records = SessionLog::read(path);
  const std::string name = path.filename().string();
  s->info.id = name.substr(0, name.size() - 5);
  s->info.status = "recovered";
  s->info.records = records.size();
  if (!records.empty()) s->info.started_at = static_cast<double>(records.front().received_us) / 1e6;
  for (const auto& r : records) {
    if (const auto* h = std::get_if<proto::Hello>(&r.message)) {
      s->info.agent_id = h->agent_id;
      s->info.map_name = h->map_name;
    } else if (const auto* t = std::get_if<proto::Telemetry>(&r.message)) {
      s->telemetry.push_back(*t);
      s->info.latest = *t;
    }
  }
  return s;
}

std::shared_ptr<Center::Session> Center::find(const std::string& id) const {
  std::lock_guard lock(mu_);
  const auto it = sessions_.find(id);
  return it == sessions_.end() ? nullptr : it->second;
}

std::shared_ptr<Center::Session> Center::connected_session() const {
  std::lock_guard lock(mu_);
  if (!active_) return nullptr;
  return sessions_.at(*active_);
}

void Center::publish(std::string type, json data) {
  {
    std::lock_guard lock(stream_mu_);
    stream_.push_back({++stream_seq_, std::move(type), std::move(data)});
    while (stream_.size() > cfg_.stream_backlog) stream_.pop_front();
  }
  stream_cv_.notify_all();
}

std::vector<StreamEvent> Center::wait_events(std::uint64_t cursor,
                                             std::chrono::milliseconds timeout) const {
  std::unique_lock lock(stream_mu_);
  stream_cv_.wait_for(lock, timeout, [&] { return stream_seq_ > cursor; });
  std::vector<StreamEvent> out;
  for (const auto& e : stream_) {
    if (e.seq > cursor) out.push_back(e);
  }
  return out;
}

std::uint64_t Center::last_event() const {
  std::lock_guard lock(stream_mu_);
  return stream_seq_;
}

void Center::log_operator(const std::string& line) {
  std::lock_guard lock(mu_);
  operator_log_.push_back(line);
  operator_file_ << line << '\n';
  operator_file_.flush();
  if (!operator_file_) storage_errors_.push_back("operator log write failed");
}

void Center::storage_failure(const std::string& what) {
  std::lock_guard lock(mu_);
  storage_errors_.push_back(what);
}

std::string Center::open_session(const proto::Hello& hello, AgentSink sink) {
  auto s = std::make_shared<Session>();
  std::string id;
  {
    std::lock_guard lock(mu_);
    id = session_name(next_session_++);
    s->info.id = id;
    s->info.agent_id = hello.agent_id;
    s->info.map_name = hello.map_name;
    s->info.started_at = wall_s();
    s->log = std::make_unique<SessionLog>(cfg_.storage_dir / (id + ".plog"));
    s->sink = std::move(sink);
    sessions_[id] = s;
    active_ = id;
    mode_ = ControlMode::autonomous;
  }
  {
    std::lock_guard ingest(s->ingest_mu);
    try {
      s->log->append(wall_us(), hello);
      std::unique_lock data(s->data_mu);
      s->info.records = s->log->records();
    } catch (const std::exception& e) {
      storage_failure(e.what());
    }
  }
  publish("session", to_json(s->info));

  std::deque<proto::OperatorCommand> queued;
  {
    std::lock_guard lock(mu_);
    queued.swap(pending_);
  }
  for (const auto& cmd : queued) {
    s->sink(cmd);
    log_operator("delivered queued command id=" + std::to_string(cmd.id) + " to " + id);
  }
  return id;
}

void Center::note(const std::string& session_id, const std::string& kind,
                  const std::string& detail) {
  const auto s = find(session_id);
  if (!s) return;
  std::unique_lock data(s->data_mu);
  const double t = s->info.latest ? s->info.latest->t_sim : 0.0;
  s->info.events.push_back({t, kind, detail});
}

void Center::ingest(const std::string& session_id, const proto::Message& m) {
  const auto s = find(session_id);
  if (!s) throw std::invalid_argument("unknown session " + session_id);
  std::lock_guard ingest(s->ingest_mu);
  if (s->info.status != "open") throw std::logic_error("session " + session_id + " is closed");

  try {
    s->log->append(wall_us(), m);
  } catch (const std::exception& e) {
    storage_failure(e.what());
    note(session_id, "storage_error", e.what());
  }
  {
    std::unique_lock data(s->data_mu);
    s->info.records = s->log->records();
  }

  if (const auto* t = std::get_if<proto::Telemetry>(&m)) {
    if (s->last_seq) {
      if (t->seq <= *s->last_seq) {
        note(session_id, "duplicate", "seq " + std::to_string(t->seq));
      } else if (t->seq > *s->last_seq + 1) {
        const std::uint64_t a = *s->last_seq + 1;
        const std::uint64_t b = t->seq - 1;
        note(session_id, "gap",
             a == b ? "seq " + std::to_string(a)
                    : "seq " + std::to_string(a) + ".." + std::to_string(b));
      }
    }
    s->last_seq = std::max(s->last_seq.value_or(0), t->seq);
    {
      std::unique_lock data(s->data_mu);
      s->telemetry.push_back(*t);
      s->info.latest = *t;
    }
    json j = to_json(*t);
    j["session"] = session_id;
    publish("telemetry", std::move(j));
  } else if (const auto* a = std::get_if<proto::AlarmSignal>(&m)) {
    on_alarm(session_id, *a);
  } else if (const auto* ack = std::get_if<proto::CommandAck>(&m)) {
    log_operator("agent " + std::string(ack->accepted ? "accepted" : "rejected") + " command id=" +
                 std::to_string(ack->id) + ": " + ack->detail);
    publish("command_ack", {{"session", session_id},
                            {"id", ack->id},
                            {"accepted", ack->accepted},
                            {"detail", ack->detail}});
  } else if (const auto* g = std::get_if<proto::Goodbye>(&m)) {
    note(session_id, "goodbye", g->reason);
  }
}

void Center::on_alarm(const std::string& session_id, const proto::AlarmSignal& a) {
  const auto tr = alarm_.raise(session_id, a, wall_s());
  if (const auto err = alarm_.storage_error()) storage_failure(*err);
  json j = to_json(tr.state);
  j["session"] = session_id;
  j["pose"] = pose_json(a.pose);
  publish("alarm", std::move(j));
  if (!tr.changed) {
    note(session_id, "alarm", std::string("additional cause ") + proto::to_string(a.cause));
    return;
  }
  publish("lockdown", to_json(*tr.lockdown));
  note(session_id, "alarm", std::string("lockdown on ") + proto::to_string(a.cause));

  proto::OperatorCommand stop;
  stop.kind = proto::CommandKind::stop;
  stop.issued_at = wall_s();
  stop.operator_id = "center";
  {
    std::lock_guard lock(mu_);
    stop.id = next_command_++;
    mode_ = ControlMode::manual;
  }
  const auto s = find(session_id);
  const bool sent = s && s->sink && s->sink(stop);
  log_operator("center lockdown session=" + session_id + " cause=" + proto::to_string(a.cause) +
               " stop id=" + std::to_string(stop.id) + (sent ? " sent" : " undeliverable"));
}

std::uint64_t Center::close_session(const std::string& session_id, const std::string& status) {
  const auto s = find(session_id);
  if (!s) return 0;
  std::uint64_t records = 0;
  {
    std::lock_guard ingest(s->ingest_mu);
    if (s->info.status != "open") return s->info.records;
    s->log->close();
    s->sink = nullptr;
    std::unique_lock data(s->data_mu);
    s->info.status = status;
    records = s->info.records;
  }
  {
    std::lock_guard lock(mu_);
    if (active_ == session_id) {
      active_.reset();
      for (const auto& [id, other] : sessions_) {
        std::shared_lock data(other->data_mu);
        if (other->info.status == "open") active_ = id;
      }
    }
  }
  publish("session", to_json(*session(session_id)));
  return records;
}

bool Center::forward(const proto::OperatorCommand& cmd) {
  const auto s = connected_session();
  if (!s) return false;
  std::lock_guard ingest(s->ingest_mu);
  return s->sink && s->sink(cmd);
}

CommandResult Center::submit(proto::OperatorCommand cmd) {
  CommandResult r;
  if (cmd.issued_at == 0.0) cmd.issued_at = wall_s();
  if (cmd.operator_id.empty()) cmd.operator_id = "operator";
  {
    std::lock_guard lock(mu_);
    if (cmd.id == 0) cmd.id = next_command_++;
  }
  r.id = cmd.id;

  auto finish = [&](CommandResult res) {
    std::string line = "operator=" + cmd.operator_id + " id=" + std::to_string(cmd.id) +
                       " kind=" + proto::to_string(cmd.kind) +
                       " value=" + proto::format_double(cmd.value);
    line += res.accepted ? (res.queued ? " queued" : " forwarded") : " rejected: " + res.reason;
    log_operator(line);
    publish("command", {{"id", cmd.id},
                        {"kind", proto::to_string(cmd.kind)},
                        {"value", cmd.value},
                        {"operator", cmd.operator_id},
                        {"accepted", res.accepted},
                        {"queued", res.queued},
                        {"reason", res.reason},
                        {"control_mode", to_string(control_mode())}});
    return res;
  };

  if (const std::string why = proto::check(cmd); !why.empty()) {
    r.reason = why;
    return finish(r);
  }

  if (cmd.kind == proto::CommandKind::ack_alarm) {
    const auto tr = alarm_.acknowledge(cmd.operator_id);
    if (!tr.changed) {
      r.reason = tr.reason;
      return finish(r);
    }
    publish("alarm", to_json(tr.state));
    forward(cmd);
    r.accepted = true;
    return finish(r);
  }

  const bool online = agent_connected();
  if (!online && !cfg_.queue_when_offline) {
    r.reason = "no agent connected";
    return finish(r);
  }

  {
    std::lock_guard lock(mu_);
    const bool manual_kind = cmd.kind == proto::CommandKind::manual_turn ||
                             cmd.kind == proto::CommandKind::manual_forward;
    if (manual_kind && mode_ != ControlMode::manual) {
      r.reason = "not in manual mode; send STOP first";
    } else if (cmd.kind == proto::CommandKind::start_patrol &&
               alarm_.state().status == AlarmStatus::active) {
      r.reason = "alarm is active; acknowledge it first";
    }
  }
  if (!r.reason.empty()) return finish(r);
  if (cmd.kind == proto::CommandKind::start_patrol) {
    const auto tr = alarm_.clear();
    if (!tr.reason.empty()) {
      r.reason = tr.reason;
      return finish(r);
    }
    if (tr.changed) publish("alarm", to_json(tr.state));
  }
  {
    std::lock_guard lock(mu_);
    if (cmd.kind == proto::CommandKind::stop) mode_ = ControlMode::manual;
    if (cmd.kind == proto::CommandKind::start_patrol) mode_ = ControlMode::autonomous;
  }

  r.accepted = true;
  if (!online || !forward(cmd)) {
    if (cfg_.queue_when_offline) {
      std::lock_guard lock(mu_);
      pending_.push_back(cmd);
      r.queued = true;
    } else {
      r.accepted = false;
      r.reason = "agent link lost";
    }
  }
  return finish(r);
}

CommandResult Center::acknowledge_alarm(const std::string& operator_id) {
  proto::OperatorCommand cmd;
  cmd.kind = proto::CommandKind::ack_alarm;
  cmd.operator_id = operator_id;
  return submit(cmd);
}

ControlMode Center::control_mode() const {
  std::lock_guard lock(mu_);
  return mode_;
}

bool Center::agent_connected() const {
  std::lock_guard lock(mu_);
  return active_.has_value();
}

std::optional<std::string> Center::active_session() const {
  std::lock_guard lock(mu_);
  return active_;
}

std::vector<SessionInfo> Center::sessions() const {
  std::vector<std::shared_ptr<Session>> all;
  {
    std::lock_guard lock(mu_);
    for (const auto& [id, s] : sessions_) all.push_back(s);
  }
  std::vector<SessionInfo> out;
  for (const auto& s : all) {
    std::shared_lock data(s->data_mu);
    out.push_back(s->info);
  }
  return out;
}

std::optional<SessionInfo> Center::session(const std::string& id) const {
  const auto s = find(id);
  if (!s) return std::nullopt;
  std::shared_lock data(s->data_mu);
  return s->info;
}

std::vector<proto::Telemetry> Center::history(const std::string& session_id, double from,
                                              double to) const {
  const auto s = find(session_id);
  if (!s) throw std::invalid_argument("unknown session " + session_id);
  std::vector<proto::Telemetry> out;
  std::shared_lock data(s->data_mu);
  for (const auto& t : s->telemetry) {
    if (t.t_sim >= from && t.t_sim <= to) out.push_back(t);
  }
  return out;
}

std::vector<std::string> Center::operator_log() const {
  std::lock_guard lock(mu_);
  return operator_log_;
}

std::vector<std::string> Center::storage_errors() const {
  std::lock_guard lock(mu_);
  return storage_errors_;
}

}  // namespace patrol::center
