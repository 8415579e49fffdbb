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
#include "patrol/center/session_log.hpp"

#include <iterator>

namespace patrol::center {

SessionLog::SessionLog(std::filesystem::path path) : path_(std::move(path)) {
  if (std::filesystem::exists(path_)) throw StorageError("session log exists: " + path_.string());
  out_.open(path_, std::ios::binary | std::ios::out);
  if (!out_) throw StorageError("cannot create " + path_.string());
}

void SessionLog::append(std::int64_t received_us, const proto::Message& m) {
  const proto::Bytes frame = proto::encode(m);
  char stamp[8];
  auto v = static_cast<std::uint64_t>(received_us);
  for (int i = 7; i >= 0; --i) {
    stamp[i] = static_cast<char>(v & 0xff);
    v >>= 8;
  }
  out_.write(stamp, sizeof stamp);
  out_.write(reinterpret_cast<const char*>(frame.data()), static_cast<std::streamsize>(frame.size()));
  out_.flush();
  if (!out_) throw StorageError("write failed: " + path_.string());
  ++records_;
}

void SessionLog::close() {
  if (out_.is_open()) out_.close();
}

std::vector<LogRecord> SessionLog::read(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw StorageError("cannot open " + path.string());
  const proto::Bytes bytes{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};

  std::vector<LogRecord> out;
  std::size_t pos = 0;
  while (pos < bytes.size()) {
    if (bytes.size() - pos < 8) break;
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v = (v << 8) | bytes[pos + i];
    const auto r = proto::decode_frame(std::span(bytes).subspan(pos + 8));
    if (r.error && r.error->kind == proto::DecodeErrorKind::truncated) break;
    if (!r.message) {
      throw StorageError(path.string() + ": damaged record at byte " + std::to_string(pos) + ": " +
                         r.error->detail);
    }
    out.push_back({static_cast<std::int64_t>(v), std::move(*r.message)});
    pos += 8 + r.consumed;
  }
  return out;
}

}  // namespace patrol::center
