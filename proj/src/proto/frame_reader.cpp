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
#include "patrol/proto/frame_reader.hpp"

namespace patrol::proto {

void FrameReader::feed(std::span<const std::uint8_t> bytes) {
  if (head_ > 0 && head_ * 2 >= buf_.size()) {
    buf_.erase(buf_.begin(), buf_.begin() + static_cast<std::ptrdiff_t>(head_));
    head_ = 0;
  }
  buf_.insert(buf_.end(), bytes.begin(), bytes.end());
}

std::optional<DecodeResult> FrameReader::next() {
  if (head_ == buf_.size()) return std::nullopt;
  DecodeResult r = decode_frame(std::span(buf_).subspan(head_));
  if (r.consumed == 0) return std::nullopt;
  head_ += r.consumed;
  if (r.error && r.error->kind == DecodeErrorKind::oversize) {
    // One report per bad run, not one per skipped byte.
    while (buf_.size() - head_ >= kLengthSize) {
      const DecodeResult probe = decode_frame(std::span(buf_).subspan(head_));
      if (!probe.error || probe.error->kind != DecodeErrorKind::oversize) break;
      ++head_;
      ++r.consumed;
    }
  }
  if (r.error) ++errors_;
  return r;
}

}  // namespace patrol::proto
