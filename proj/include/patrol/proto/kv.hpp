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
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace patrol::proto {

class KvError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shortest text that parses back to the same double.
std::string format_double(double v);
/// Inverse of format_double; the whole string must be consumed.
/// Throws KvError unless text is a complete, finite number.
double parse_double(std::string_view text);

/// Percent-escapes every byte outside [A-Za-z0-9._:,/+-].
std::string escape(std::string_view raw);
std::string unescape(std::string_view text);

/// Ordered "key=value key=value" record. Keys are [a-z0-9_]+, values are
/// escaped, so a record is always one line of printable ASCII.
class KvRecord {
 public:
  KvRecord& set(std::string_view key, std::string value);
  KvRecord& set_double(std::string_view key, double v) { return set(key, format_double(v)); }
  KvRecord& set_int(std::string_view key, std::int64_t v) { return set(key, std::to_string(v)); }
  KvRecord& set_uint(std::string_view key, std::uint64_t v) { return set(key, std::to_string(v)); }
  KvRecord& set_bool(std::string_view key, bool v) { return set(key, v ? "1" : "0"); }

  bool has(std::string_view key) const { return find(key) != nullptr; }
  const std::string* find(std::string_view key) const;

  /// Typed getters; throw KvError when the key is missing or malformed.
  const std::string& str(std::string_view key) const;
  double num(std::string_view key) const;
  std::int64_t integer(std::string_view key) const;
  std::uint64_t uinteger(std::string_view key) const;
  bool flag(std::string_view key) const;

  const std::vector<std::pair<std::string, std::string>>& fields() const { return fields_; }

  std::string encode() const;
  /// Throws KvError on malformed text or a repeated key.
  static KvRecord parse(std::string_view text);

  friend bool operator==(const KvRecord&, const KvRecord&) = default;

 private:
  std::vector<std::pair<std::string, std::string>> fields_;
};

}  // namespace patrol::proto
