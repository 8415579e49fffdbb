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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>

#include "patrol/proto/codec.hpp"

namespace patrol::proto {

/// Reassembles frames from a byte stream. Bad frames are reported and
/// skipped; an implausible length prefix drops one byte at a time until
/// a plausible header lines up again.
class FrameReader {
 public:
  void feed(std::span<const std::uint8_t> bytes);

  /// Next message or error, or nullopt when more bytes are needed.
  std::optional<DecodeResult> next();

  std::size_t buffered() const { return buf_.size() - head_; }
  std::size_t errors() const { return errors_; }

 private:
  Bytes buf_;
  std::size_t head_ = 0;
  std::size_t errors_ = 0;
};

}  // namespace patrol::proto
