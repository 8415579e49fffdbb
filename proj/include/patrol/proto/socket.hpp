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

#include <chrono>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>

#include "patrol/proto/codec.hpp"

namespace patrol::proto {

class NetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Owning TCP socket handle.
class Socket {
 public:
  Socket() = default;
  explicit Socket(int fd) : fd_(fd) {}
  Socket(Socket&& other) noexcept : fd_(other.release()) {}
  Socket& operator=(Socket&& other) noexcept;
  Socket(const Socket&) = delete;
  Socket& operator=(const Socket&) = delete;
  ~Socket() { close(); }

  int fd() const { return fd_; }
  bool valid() const { return fd_ >= 0; }
  int release() {
    const int fd = fd_;
    fd_ = -1;
    return fd;
  }
  void close();
  /// Shuts down both directions, waking a thread blocked in recv.
  void shutdown();

  /// Throws NetError when the peer is gone.
  void send_all(std::span<const std::uint8_t> bytes);
  void send_message(const Message& m) { send_all(encode(m)); }
  /// Blocks for up to timeout; returns the bytes read, 0 on orderly close,
  /// -1 on timeout. Throws NetError on failure.
  long recv_some(std::span<std::uint8_t> buf, std::chrono::milliseconds timeout);

 private:
  int fd_ = -1;
};

/// Throws NetError when the endpoint cannot be reached within timeout.
Socket connect_tcp(const std::string& host, std::uint16_t port, std::chrono::milliseconds timeout);

class Listener {
 public:
  /// Binds host:port (port 0 picks a free port). Throws NetError.
  Listener(const std::string& host, std::uint16_t port);
  std::uint16_t port() const { return port_; }
  /// Waits up to timeout for a connection; invalid Socket on timeout.
  Socket accept(std::chrono::milliseconds timeout);
  void close() { sock_.close(); }

 private:
  Socket sock_;
  std::uint16_t port_ = 0;
};

}  // namespace patrol::proto
