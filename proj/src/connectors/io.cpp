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

#include "edgestream/connectors/io.hpp"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>

#include "edgestream/connectors/codec.hpp"
#include "edgestream/connectors/framing.hpp"
#include "edgestream/core/error.hpp"

namespace edgestream::connectors {

EDGESTREAM_DEFINE_ERROR(IoError);

FileSource::FileSource(const std::filesystem::path& path) : in_(path), path_(path) {
  if (!in_) throw IoError("cannot open " + path.string());
}

std::optional<Event> FileSource::next() {
  std::string line;
  while (std::getline(in_, line)) {
    ++line_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    try {
      return decode_event(line);
    } catch (const Error& e) {
      throw MalformedRecord(path_.string() + ":" + std::to_string(line_) + ": " + e.what());
    }
  }
  return std::nullopt;
}

std::vector<Event> read_events(const std::filesystem::path& path) {
  FileSource src(path);
  std::vector<Event> out;
  while (auto e = src.next()) out.push_back(std::move(*e));
  return out;
}

FileSink::FileSink(const std::filesystem::path& path) : out_(path, std::ios::binary | std::ios::trunc) {
  if (!out_) throw IoError("cannot open " + path.string() + " for writing");
}

void FileSink::write(const Event& e) {
  out_ << encode_event(e) << '\n';
  if (!out_) throw IoError("write failed");
}

void write_events(const std::filesystem::path& path, const std::vector<Event>& events) {
  FileSink sink(path);
  for (const auto& e : events) sink.write(e);
  sink.flush();
}

namespace {

void send_all(int fd, std::string_view bytes) {
  while (!bytes.empty()) {
    ssize_t n = ::send(fd, bytes.data(), bytes.size(), MSG_NOSIGNAL);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw IoError(std::string("send: ") + std::strerror(errno));
    }
    bytes.remove_prefix(static_cast<std::size_t>(n));
  }
}

}  // namespace

TcpConnection TcpConnection::connect(const std::string& host, std::uint16_t port) {
  addrinfo hints{};
  hints.ai_family = AF_INET;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* res = nullptr;
  if (::getaddrinfo(host.c_str(), std::to_string(port).c_str(), &hints, &res) != 0 || !res) {
    throw IoError("cannot resolve " + host);
  }
  int fd = ::socket(res->ai_family, res->ai_socktype, res->ai_protocol);
  if (fd < 0) {
    ::freeaddrinfo(res);
    throw IoError(std::string("socket: ") + std::strerror(errno));
  }
  if (::connect(fd, res->ai_addr, res->ai_addrlen) != 0) {
    int err = errno;
    ::freeaddrinfo(res);
    ::close(fd);
    throw IoError(std::string("connect: ") + std::strerror(err));
  }
  ::freeaddrinfo(res);
  int one = 1;
  ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
  return TcpConnection(fd);
}

TcpConnection::TcpConnection(TcpConnection&& other) noexcept
    : fd_(std::exchange(other.fd_, -1)), rx_(std::move(other.rx_)) {}

TcpConnection& TcpConnection::operator=(TcpConnection&& other) noexcept {
  if (this != &other) {
    if (fd_ >= 0) ::close(fd_);
    fd_ = std::exchange(other.fd_, -1);
    rx_ = std::move(other.rx_);
  }
  return *this;
}

TcpConnection::~TcpConnection() {
  if (fd_ >= 0) ::close(fd_);
}

void TcpConnection::send_event(const Event& e) { send_all(fd_, encode_event_binary(e)); }

std::optional<Event> TcpConnection::receive_event() {
  for (;;) {
    if (auto payload = rx_.next()) return decode_event(*payload);
    char buf[65536];
    ssize_t n = ::recv(fd_, buf, sizeof(buf), 0);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw IoError(std::string("recv: ") + std::strerror(errno));
    }
    if (n == 0) {
      if (rx_.pending_bytes() > 0) throw MalformedRecord("connection closed mid-frame");
      return std::nullopt;
    }
    rx_.feed(std::string_view(buf, static_cast<std::size_t>(n)));
  }
}

void TcpConnection::shutdown_write() {
  if (fd_ >= 0) ::shutdown(fd_, SHUT_WR);
}

TcpListener::TcpListener(std::uint16_t port) {
  fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
  if (fd_ < 0) throw IoError(std::string("socket: ") + std::strerror(errno));
  int one = 1;
  ::setsockopt(fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
  addr.sin_port = htons(port);
  if (::bind(fd_, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0 || ::listen(fd_, 8) != 0) {
    int err = errno;
    ::close(fd_);
    throw IoError(std::string("bind/listen: ") + std::strerror(err));
  }
  socklen_t len = sizeof(addr);
  ::getsockname(fd_, reinterpret_cast<sockaddr*>(&addr), &len);
  port_ = ntohs(addr.sin_port);
}

TcpListener::~TcpListener() {
  if (fd_ >= 0) ::close(fd_);
}

TcpConnection TcpListener::accept() {
  for (;;) {
    int fd = ::accept(fd_, nullptr, nullptr);
    if (fd >= 0) return TcpConnection(fd);
    if (errno != EINTR) throw IoError(std::string("accept: ") + std::strerror(errno));
  }
}

}  // namespace edgestream::connectors
