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
#include <stdexcept>
#include <string>
#include <vector>

#include "patrol/proto/kv.hpp"
#include "patrol/proto/messages.hpp"

namespace patrol::proto {

inline constexpr std::uint8_t kVersion = 1;
inline constexpr std::size_t kLengthSize = 4;
/// Upper bound on a whole frame, length prefix included.
inline constexpr std::size_t kMaxFrame = std::size_t{1} << 20;

using Bytes = std::vector<std::uint8_t>;

class EncodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class DecodeErrorKind { truncated, unknown_version, unknown_tag, invalid_body, oversize };
const char* to_string(DecodeErrorKind k);

struct DecodeError {
  DecodeErrorKind kind;
  std::string detail;
};

/// Thrown by decode() on any classified failure.
class DecodeFailure : public std::runtime_error {
 public:
  explicit DecodeFailure(DecodeError e);
  const DecodeError& error() const noexcept { return error_; }

 private:
  DecodeError error_;
};

/// Message body as a key-value record, and back.
KvRecord to_record(const Message& m);
Message from_record(MessageType type, const KvRecord& r);

/// Throws EncodeError when the message breaks its invariants or the frame
/// would exceed kMaxFrame.
Bytes encode(const Message& m);

/// Outcome of decoding the first frame in a buffer. consumed is the number
/// of bytes to drop before the next attempt; it is 0 only for a truncated
/// buffer, which needs more input.
struct DecodeResult {
  std::optional<Message> message;
  std::optional<DecodeError> error;
  std::size_t consumed = 0;
};

DecodeResult decode_frame(std::span<const std::uint8_t> buf);

/// Decodes exactly one frame; throws DecodeFailure otherwise (trailing bytes
/// count as an invalid body).
Message decode(std::span<const std::uint8_t> buf);

}  // namespace patrol::proto
