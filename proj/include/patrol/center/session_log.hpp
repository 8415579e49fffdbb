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
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "patrol/proto/codec.hpp"

namespace patrol::center {

class StorageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LogRecord {
  std::int64_t received_us = 0;  // wall clock, microseconds since the epoch
  proto::Message message;
};

/// Append-only record file for one agent session. Each record is an
/// 8-byte big-endian receive time followed by the message in its wire
/// framing. Every append is flushed before it returns.
class SessionLog {
 public:
  /// Creates the file; throws StorageError when it already exists or
  /// cannot be opened.
  explicit SessionLog(std::filesystem::path path);

  /// Throws StorageError on a failed write.
  void append(std::int64_t received_us, const proto::Message& m);
  std::uint64_t records() const { return records_; }
  const std::filesystem::path& path() const { return path_; }
  void close();

  /// Reads a log back. A torn final record (a crash mid-write) is ignored;
  /// any other damage throws StorageError.
  static std::vector<LogRecord> read(const std::filesystem::path& path);

 private:
  std::filesystem::path path_;
  std::ofstream out_;
  std::uint64_t records_ = 0;
};

}  // namespace patrol::center
