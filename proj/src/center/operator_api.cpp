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
#include "patrol/center/operator_api.hpp"

#include <limits>
#include <stdexcept>

#include <httplib.h>

#include "patrol/proto/kv.hpp"

namespace patrol::center {

using nlohmann::json;
using namespace std::chrono_literals;

namespace {

void reply(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void fail(httplib::Response& res, int status, const std::string& reason) {
  reply(res, status, {{"error", reason}});
}

double query_number(const httplib::Request& req, const char* key, double fallback) {
  if (!req.has_param(key)) return fallback;
  return proto::parse_double(req.get_param_value(key));
}

json result_json(const CommandResult& r) {
  return {{"accepted", r.accepted}, {"queued", r.queued}, {"id", r.id}, {"reason", r.reason}};
}

json brief(const SessionInfo& s) {
  json j = to_json(s);
  j.erase("events");
  j.erase("latest");
  return j;
}

json status_json(const Center& c) {
  json sessions = json::array();
  std::optional<proto::Telemetry> latest;
  for (const auto& s : c.sessions()) {
    sessions.push_back(brief(s));
    if (s.latest) latest = s.latest;
  }
  if (const auto id = c.active_session()) {
    if (const auto s = c.session(*id); s && s->latest) latest = s->latest;
  }
  const auto active = c.active_session();
  return {{"alarm", to_json(c.alarm())},
          {"control_mode", to_string(c.control_mode())},
          {"agent_connected", c.agent_connected()},
          {"active_session", active ? json(*active) : json(nullptr)},
          {"telemetry", latest ? to_json(*latest) : json(nullptr)},
          {"lockdowns", c.lockdowns().size()},
          {"sessions", sessions},
          {"stream_seq", c.last_event()}};
}

}  // namespace

json map_to_json(const sim::WorldMap& map) {
  json walls = json::array();
  for (const auto& w : map.walls) walls.push_back({w.a.x, w.a.y, w.b.x, w.b.y});
  json circles = json::array();
  json polygons = json::array();
  for (const auto& o : map.obstacles) {
    if (const auto* c = std::get_if<sim::Circle>(&o)) {
      circles.push_back({{"x", c->center.x}, {"y", c->center.y}, {"r", c->radius}});
    } else {
      json pts = json::array();
      for (const auto& v : std::get<sim::Polygon>(o).vertices) pts.push_back({v.x, v.y});
      polygons.push_back(pts);
    }
  }
  json humans = json::array();
  for (const auto& h : map.humans) {
    humans.push_back({{"x", h.position.x},
                      {"y", h.position.y},
                      {"appear", h.appear_time},
                      {"duration", h.active_duration}});
  }
  return {{"name", map.name()},
          {"walls", walls},
          {"circles", circles},
          {"polygons", polygons},
          {"humans", humans},
          {"start", {{"x", map.start.x}, {"y", map.start.y}, {"heading", map.start.heading}}},
          {"meta", map.metadata}};
}

OperatorApi::OperatorApi(Center& center, std::optional<sim::WorldMap> map)
    : center_(center), map_(std::move(map)), server_(std::make_unique<httplib::Server>()) {
  install_routes();
}

OperatorApi::~OperatorApi() { stop(); }

void OperatorApi::install_routes() {
  auto& srv = *server_;
  srv.set_default_headers({{"Access-Control-Allow-Origin", "*"}});
  srv.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) {
    res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
    res.status = 204;
  });

  srv.Get("/api/health", [this](const httplib::Request&, httplib::Response& res) {
    const auto errors = center_.storage_errors();
    reply(res, 200,
          {{"ok", errors.empty()},
           {"storage_errors", errors},
           {"agent_connected", center_.agent_connected()},
           {"sessions", center_.sessions().size()}});
  });

  srv.Get("/api/status", [this](const httplib::Request&, httplib::Response& res) {
    reply(res, 200, status_json(center_));
  });

  srv.Get("/api/map", [this](const httplib::Request&, httplib::Response& res) {
    if (!map_) return fail(res, 404, "no map loaded");
    reply(res, 200, map_to_json(*map_));
  });

  srv.Get("/api/sessions", [this](const httplib::Request&, httplib::Response& res) {
    json out = json::array();
    for (const auto& s : center_.sessions()) out.push_back(brief(s));
    reply(res, 200, out);
  });

  srv.Get(R"(/api/sessions/([A-Za-z0-9_-]+))",
          [this](const httplib::Request& req, httplib::Response& res) {
            const auto s = center_.session(req.matches[1]);
            if (!s) return fail(res, 404, "unknown session");
            reply(res, 200, to_json(*s));
          });

  srv.Get(R"(/api/sessions/([A-Za-z0-9_-]+)/telemetry)",
          [this](const httplib::Request& req, httplib::Response& res) {
            const std::string id = req.matches[1];
            if (!center_.session(id)) return fail(res, 404, "unknown session");
            double from = 0.0;
            double to = 0.0;
            try {
              from = query_number(req, "from", -std::numeric_limits<double>::infinity());
              to = query_number(req, "to", std::numeric_limits<double>::infinity());
            } catch (const std::exception&) {
              return fail(res, 400, "from/to must be numbers");
            }
            json out = json::array();
            for (const auto& t : center_.history(id, from, to)) out.push_back(to_json(t));
            reply(res, 200, out);
          });

  srv.Get("/api/commands", [this](const httplib::Request&, httplib::Response& res) {
    reply(res, 200, center_.operator_log());
  });

  srv.Get("/api/lockdowns", [this](const httplib::Request&, httplib::Response& res) {
    json out = json::array();
    for (const auto& r : center_.lockdowns()) out.push_back(to_json(r));
    reply(res, 200, out);
  });

  srv.Get("/api/stream", [this](const httplib::Request& req, httplib::Response& res) {
    std::uint64_t cursor = center_.last_event();
    if (req.has_param("since")) {
      try {
        cursor = std::stoull(req.get_param_value("since"));
      } catch (const std::exception&) {
        return fail(res, 400, "since must be an event id");
      }
    }
    res.set_header("Cache-Control", "no-cache");
    auto stopping = stopping_;
    bool greeted = false;
    res.set_chunked_content_provider(
        "text/event-stream",
        [this, stopping, cursor, greeted](std::size_t, httplib::DataSink& sink) mutable {
          if (*stopping) return false;
          std::string chunk;
          if (!greeted) {
            chunk = "event: status\ndata: " + status_json(center_).dump() + "\n\n";
            greeted = true;
          }
          const auto events = center_.wait_events(cursor, 500ms);
          for (const auto& e : events) {
            chunk += "id: " + std::to_string(e.seq) + "\nevent: " + e.type +
                     "\ndata: " + e.data.dump() + "\n\n";
            cursor = e.seq;
          }
          if (chunk.empty()) chunk = ": keepalive\n\n";
          return sink.write(chunk.data(), chunk.size());
        });
  });

  srv.Post("/api/command", [this](const httplib::Request& req, httplib::Response& res) {
    proto::OperatorCommand cmd;
    try {
      const json body = json::parse(req.body);
      cmd.kind = proto::command_kind_from_string(body.at("kind").get<std::string>());
      cmd.value = body.value("value", 0.0);
      cmd.operator_id = body.value("operator", std::string("operator"));
    } catch (const std::exception& e) {
      return fail(res, 400, std::string("bad command: ") + e.what());
    }
    const auto r = center_.submit(cmd);
    reply(res, r.accepted ? 200 : 409, result_json(r));
  });

  srv.Post("/api/alarm/ack", [this](const httplib::Request& req, httplib::Response& res) {
    std::string op = "operator";
    if (!req.body.empty()) {
      try {
        op = json::parse(req.body).value("operator", op);
      } catch (const std::exception& e) {
        return fail(res, 400, std::string("bad body: ") + e.what());
      }
    }
    const auto r = center_.acknowledge_alarm(op);
    reply(res, r.accepted ? 200 : 409, result_json(r));
  });
}

std::uint16_t OperatorApi::start(const std::string& host, std::uint16_t port) {
  int bound = port;
  if (port == 0) {
    bound = server_->bind_to_any_port(host);
  } else if (!server_->bind_to_port(host, port)) {
    bound = -1;
  }
  if (bound <= 0) throw std::runtime_error("cannot bind HTTP " + host + ":" + std::to_string(port));
  thread_ = std::thread([this] { server_->listen_after_bind(); });
  server_->wait_until_ready();
  return static_cast<std::uint16_t>(bound);
}

void OperatorApi::stop() {
  if (!server_) return;
  *stopping_ = true;
  server_->stop();
  if (thread_.joinable()) thread_.join();
}

}  // namespace patrol::center
