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
#include "patrol/proto/codec.hpp"

#include <type_traits>

namespace patrol::proto {
namespace {

std::string to_hex(const std::string& raw) {
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(raw.size() * 2);
  for (const char ch : raw) {
    const auto c = static_cast<unsigned char>(ch);
    out.push_back(kHex[c >> 4]);
    out.push_back(kHex[c & 0xF]);
  }
  return out;
}

int nibble(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  return -1;
}

std::string from_hex(const std::string& hex) {
  if (hex.size() % 2 != 0) throw KvError("odd-length hex payload");
  std::string out(hex.size() / 2, '\0');
  for (std::size_t i = 0; i < out.size(); ++i) {
    const int hi = nibble(hex[2 * i]);
    const int lo = nibble(hex[2 * i + 1]);
    if (hi < 0 || lo < 0) throw KvError("bad hex payload");
    out[i] = static_cast<char>(hi * 16 + lo);
  }
  return out;
}

void put_pose(KvRecord& r, const Pose& p) {
  r.set_double("x", p.x).set_double("y", p.y).set_double("heading", p.heading);
}

Pose get_pose(const KvRecord& r) { return {r.num("x"), r.num("y"), r.num("heading")}; }

AlarmCause cause_from(const std::string& s) {
  if (s == "HMS_LEFT") return AlarmCause::hms_left;
  if (s == "HMS_RIGHT") return AlarmCause::hms_right;
  throw KvError("unknown alarm cause '" + s + "'");
}

std::uint32_t read_be32(const std::uint8_t* p) {
  return (std::uint32_t{p[0]} << 24) | (std::uint32_t{p[1]} << 16) | (std::uint32_t{p[2]} << 8) |
         std::uint32_t{p[3]};
}

DecodeResult fail(DecodeErrorKind kind, std::string detail, std::size_t consumed) {
  DecodeResult r;
  r.error = DecodeError{kind, std::move(detail)};
  r.consumed = consumed;
  return r;
}

}  // namespace

const char* to_string(DecodeErrorKind k) {
  switch (k) {
    case DecodeErrorKind::truncated: return "truncated";
    case DecodeErrorKind::unknown_version: return "unknown-version";
    case DecodeErrorKind::unknown_tag: return "unknown-tag";
    case DecodeErrorKind::invalid_body: return "invalid-body";
    case DecodeErrorKind::oversize: return "oversize";
  }
  return "?";
}

DecodeFailure::DecodeFailure(DecodeError e)
    : std::runtime_error(std::string(to_string(e.kind)) + ": " + e.detail), error_(std::move(e)) {}

KvRecord to_record(const Message& m) {
  KvRecord r;
  std::visit(
      [&](const auto& msg) {
        using T = std::decay_t<decltype(msg)>;
        if constexpr (std::is_same_v<T, Telemetry>) {
          r.set_uint("seq", msg.seq).set_double("t", msg.t_sim);
          put_pose(r, msg.pose);
          r.set_double("sl", msg.sonar_left)
              .set_double("sf", msg.sonar_front)
              .set_double("sr", msg.sonar_right)
              .set_bool("hl", msg.hms_left)
              .set_bool("hr", msg.hms_right)
              .set_double("battery", msg.battery)
              .set("mode", msg.mode)
              .set_double("odo", msg.odometer);
        } else if constexpr (std::is_same_v<T, VideoFrame>) {
          r.set_uint("seq", msg.seq)
              .set_double("t", msg.t_sim)
              .set_int("w", msg.width)
              .set_int("h", msg.height)
              .set("payload", to_hex(msg.payload));
        } else if constexpr (std::is_same_v<T, AlarmSignal>) {
          r.set_double("t", msg.t_sim).set("cause", to_string(msg.cause));
          put_pose(r, msg.pose);
        } else if constexpr (std::is_same_v<T, OperatorCommand>) {
          r.set_uint("id", msg.id)
              .set("kind", to_string(msg.kind))
              .set_double("value", msg.value)
              .set_double("issued_at", msg.issued_at)
              .set("operator", msg.operator_id);
        } else if constexpr (std::is_same_v<T, Hello>) {
          r.set("agent", msg.agent_id).set("map", msg.map_name);
        } else if constexpr (std::is_same_v<T, Goodbye>) {
          r.set("reason", msg.reason).set_uint("last_seq", msg.last_seq);
        } else if constexpr (std::is_same_v<T, GoodbyeAck>) {
          r.set_uint("records", msg.records);
        } else {
          r.set_uint("id", msg.id).set_bool("accepted", msg.accepted).set("detail", msg.detail);
        }
      },
      m);
  return r;
}

Message from_record(MessageType type, const KvRecord& r) {
  switch (type) {
    case MessageType::telemetry: {
      Telemetry t;
      t.seq = r.uinteger("seq");
      t.t_sim = r.num("t");
      t.pose = get_pose(r);
      t.sonar_left = r.num("sl");
      t.sonar_front = r.num("sf");
      t.sonar_right = r.num("sr");
      t.hms_left = r.flag("hl");
      t.hms_right = r.flag("hr");
      t.battery = r.num("battery");
      t.mode = r.str("mode");
      t.odometer = r.num("odo");
      return t;
    }
    case MessageType::video_frame: {
      VideoFrame v;
      v.seq = r.uinteger("seq");
      v.t_sim = r.num("t");
      const auto w = r.integer("w");
      const auto h = r.integer("h");
      if (w != kVideoWidth || h != kVideoHeight) throw KvError("video must be 353x288");
      v.width = static_cast<int>(w);
      v.height = static_cast<int>(h);
      v.payload = from_hex(r.str("payload"));
      return v;
    }
    case MessageType::alarm_signal:
      return AlarmSignal{r.num("t"), cause_from(r.str("cause")), get_pose(r)};
    case MessageType::operator_command: {
      OperatorCommand c;
      c.id = r.uinteger("id");
      try {
        c.kind = command_kind_from_string(r.str("kind"));
      } catch (const std::invalid_argument& e) {
        throw KvError(e.what());
      }
      c.value = r.num("value");
      c.issued_at = r.num("issued_at");
      c.operator_id = r.str("operator");
      return c;
    }
    case MessageType::hello:
      return Hello{r.str("agent"), r.str("map")};
    case MessageType::goodbye:
      return Goodbye{r.str("reason"), r.uinteger("last_seq")};
    case MessageType::goodbye_ack:
      return GoodbyeAck{r.uinteger("records")};
    case MessageType::command_ack:
      return CommandAck{r.uinteger("id"), r.flag("accepted"), r.str("detail")};
  }
  throw KvError("unknown message type");
}

Bytes encode(const Message& m) {
  if (const std::string why = check(m); !why.empty()) {
    throw EncodeError(std::string(to_string(type_of(m))) + ": " + why);
  }
  const std::string body = to_record(m).encode();
  const std::size_t len = body.size() + 2;
  if (len + kLengthSize > kMaxFrame) {
    throw EncodeError("frame of " + std::to_string(len + kLengthSize) + " bytes exceeds 1 MiB");
  }
  Bytes out;
  out.reserve(len + kLengthSize);
  out.push_back(static_cast<std::uint8_t>(len >> 24));
  out.push_back(static_cast<std::uint8_t>(len >> 16));
  out.push_back(static_cast<std::uint8_t>(len >> 8));
  out.push_back(static_cast<std::uint8_t>(len));
  out.push_back(kVersion);
  out.push_back(static_cast<std::uint8_t>(type_of(m)));
  out.insert(out.end(), body.begin(), body.end());
  return out;
}

DecodeResult decode_frame(std::span<const std::uint8_t> buf) {
  if (buf.size() < kLengthSize) {
    return fail(DecodeErrorKind::truncated, "need length prefix", 0);
  }
  const std::size_t len = read_be32(buf.data());
  if (len > kMaxFrame - kLengthSize) {
    return fail(DecodeErrorKind::oversize, "declared length " + std::to_string(len), 1);
  }
  const std::size_t total = kLengthSize + len;
  if (len < 2) return fail(DecodeErrorKind::invalid_body, "frame shorter than its header", total);
  if (buf.size() < total) {
    return fail(DecodeErrorKind::truncated,
                "have " + std::to_string(buf.size()) + " of " + std::to_string(total) + " bytes", 0);
  }
  const std::uint8_t version = buf[kLengthSize];
  if (version != kVersion) {
    return fail(DecodeErrorKind::unknown_version, "version " + std::to_string(version), total);
  }
  const std::uint8_t tag = buf[kLengthSize + 1];
  if (tag < 1 || tag > std::variant_size_v<Message>) {
    return fail(DecodeErrorKind::unknown_tag, "tag " + std::to_string(tag), total);
  }
  const auto* body = reinterpret_cast<const char*>(buf.data() + kLengthSize + 2);
  try {
    const KvRecord rec = KvRecord::parse(std::string_view(body, len - 2));
    Message m = from_record(static_cast<MessageType>(tag), rec);
    if (std::string why = check(m); !why.empty()) {
      return fail(DecodeErrorKind::invalid_body, why, total);
    }
    DecodeResult r;
    r.message = std::move(m);
    r.consumed = total;
    return r;
  } catch (const std::exception& e) {
    return fail(DecodeErrorKind::invalid_body, e.what(), total);
  }
}

Message decode(std::span<const std::uint8_t> buf) {
  DecodeResult r = decode_frame(buf);
  if (r.error) throw DecodeFailure(*r.error);
  if (r.consumed != buf.size()) {
    throw DecodeFailure({DecodeErrorKind::invalid_body, "trailing bytes after frame"});
  }
  return std::move(*r.message);
}

}  // namespace patrol::proto
