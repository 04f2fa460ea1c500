// Copyright 2026 The edgestream Authors
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
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "edgestream/connectors/framing.hpp"
#include "edgestream/core/value.hpp"

namespace edgestream::connectors {

/// Reads newline-delimited text records.
class FileSource {
 public:
  explicit FileSource(const std::filesystem::path& path);

  /// Next event in file order; nullopt at end of file. Blank lines are
  /// skipped. Decode errors propagate with the 1-based line number.
  std::optional<Event> next();

  std::size_t line() const { return line_; }

 private:
  std::ifstream in_;
  std::filesystem::path path_;
  std::size_t line_ = 0;
};

/// Reads every event of a text-record file.
std::vector<Event> read_events(const std::filesystem::path& path);

/// Appends text records, one per line.
class FileSink {
 public:
  explicit FileSink(const std::filesystem::path& path);
  void write(const Event& e);
  void flush() { out_.flush(); }

 private:
  std::ofstream out_;
};

void write_events(const std::filesystem::path& path, const std::vector<Event>& events);

/// Connected TCP stream carrying back-to-back binary frames.
class TcpConnection {
 public:
  static TcpConnection connect(const std::string& host, std::uint16_t port);

  TcpConnection(TcpConnection&& other) noexcept;
  TcpConnection& operator=(TcpConnection&& other) noexcept;
  TcpConnection(const TcpConnection&) = delete;
  TcpConnection& operator=(const TcpConnection&) = delete;
  ~TcpConnection();

  void send_event(const Event& e);
  /// Blocks until a full event arrives; nullopt when the peer closed.
  std::optional<Event> receive_event();
  void shutdown_write();

 private:
  friend class TcpListener;
  explicit TcpConnection(int fd) : fd_(fd) {}

  int fd_ = -1;
  Deframer rx_;
};

class TcpListener {
 public:
  /// Binds 127.0.0.1; port 0 selects an ephemeral port.
  explicit TcpListener(std::uint16_t port = 0);
  TcpListener(const TcpListener&) = delete;
  TcpListener& operator=(const TcpListener&) = delete;
  ~TcpListener();

  std::uint16_t port() const { return port_; }
  TcpConnection accept();

 private:
  int fd_ = -1;
  std::uint16_t port_ = 0;
};

}  // namespace edgestream::connectors
