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
#include "patrol/proto/kv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <system_error>

namespace patrol::proto {
namespace {

bool key_ok(std::string_view key) {
  return !key.empty() && std::all_of(key.begin(), key.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
  });
}

bool plain(unsigned char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
         c == '.' || c == '_' || c == ':' || c == ',' || c == '/' || c == '+' || c == '-';
}

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  return -1;
}

template <typename T>
T parse_integral(std::string_view key, const std::string& text) {
  T v{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw KvError("field '" + std::string(key) + "' is not an integer: '" + text + "'");
  }
  return v;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) throw KvError("cannot format double");
  return std::string(buf, ptr);
}

double parse_double(std::string_view text) {
  double v = 0.0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (text.empty() || ec != std::errc() || ptr != end || !std::isfinite(v)) {
    throw KvError("not a finite number: '" + std::string(text) + "'");
  }
  return v;
}

std::string escape(std::string_view raw) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out;
  out.reserve(raw.size());
  for (const char ch : raw) {
    const auto c = static_cast<unsigned char>(ch);
    if (plain(c)) {
      out.push_back(ch);
    } else {
      out.push_back('%');
      out.push_back(kHex[c >> 4]);
      out.push_back(kHex[c & 0xF]);
    }
  }
  return out;
}

std::string unescape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '%') {
      if (i + 2 >= text.size()) throw KvError("truncated escape");
      const int hi = hex_value(text[i + 1]);
      const int lo = hex_value(text[i + 2]);
      if (hi < 0 || lo < 0) throw KvError("bad escape");
      out.push_back(static_cast<char>(hi * 16 + lo));
      i += 2;
    } else if (plain(static_cast<unsigned char>(c))) {
      out.push_back(c);
    } else {
      throw KvError("unescaped byte in value");
    }
  }
  return out;
}

KvRecord& KvRecord::set(std::string_view key, std::string value) {
  if (!key_ok(key)) throw KvError("bad key '" + std::string(key) + "'");
  for (auto& [k, v] : fields_) {
    if (k == key) {
      v = std::move(value);
      return *this;
    }
  }
  fields_.emplace_back(std::string(key), std::move(value));
  return *this;
}

const std::string* KvRecord::find(std::string_view key) const {
  for (const auto& [k, v] : fields_) {
    if (k == key) return &v;
  }
  return nullptr;
}

const std::string& KvRecord::str(std::string_view key) const {
  const std::string* v = find(key);
  if (v == nullptr) throw KvError("missing field '" + std::string(key) + "'");
  return *v;
}

double KvRecord::num(std::string_view key) const { return parse_double(str(key)); }

std::int64_t KvRecord::integer(std::string_view key) const {
  return parse_integral<std::int64_t>(key, str(key));
}

std::uint64_t KvRecord::uinteger(std::string_view key) const {
  return parse_integral<std::uint64_t>(key, str(key));
}

bool KvRecord::flag(std::string_view key) const {
  const std::string& v = str(key);
  if (v == "1") return true;
  if (v == "0") return false;
  throw KvError("field '" + std::string(key) + "' is not 0 or 1");
}

std::string KvRecord::encode() const {
  std::string out;
  for (const auto& [k, v] : fields_) {
    if (!out.empty()) out.push_back(' ');
    out += k;
    out.push_back('=');
    out += escape(v);
  }
  return out;
}

KvRecord KvRecord::parse(std::string_view text) {
  KvRecord r;
  std::size_t i = 0;
  while (i < text.size()) {
    const std::size_t end = std::min(text.find(' ', i), text.size());
    const std::string_view item = text.substr(i, end - i);
    const std::size_t eq = item.find('=');
    if (eq == std::string_view::npos) throw KvError("field without '='");
    const std::string_view key = item.substr(0, eq);
    if (!key_ok(key)) throw KvError("bad key");
    if (r.has(key)) throw KvError("repeated key '" + std::string(key) + "'");
    r.fields_.emplace_back(std::string(key), unescape(item.substr(eq + 1)));
    if (end == text.size()) break;
    i = end + 1;
    if (i == text.size()) throw KvError("trailing space");
  }
  return r;
}

}  // namespace patrol::proto
