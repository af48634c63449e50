/*
 * Copyright 2026 The scaletwin Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "scaletwin/bus/udp_transport.h"

#include <arpa/inet.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>

#include "scaletwin/error.h"

namespace scaletwin::bus {
namespace {

constexpr int kReceiveBufferBytes = 8 * 1024 * 1024;
constexpr int kPollTimeoutMs = 20;

std::string SockaddrKey(const sockaddr_in& addr) {
  char host[INET_ADDRSTRLEN] = {};
  ::inet_ntop(AF_INET, &addr.sin_addr, host, sizeof(host));
  return std::string(host) + ":" + std::to_string(ntohs(addr.sin_port));
}

}  // namespace

Endpoint Endpoint::Parse(const std::string& text) {
  const auto colon = text.rfind(':');
  if (colon == std::string::npos || colon == 0) {
    throw Error(ErrorCode::kConfigInvalid, "endpoint '" + text + "' needs host:port");
  }
  Endpoint ep;
  ep.host = text.substr(0, colon);
  in_addr probe{};
  if (::inet_pton(AF_INET, ep.host.c_str(), &probe) != 1) {
    throw Error(ErrorCode::kConfigInvalid, "bad IPv4 host in '" + text + "'");
  }
  const std::string port = text.substr(colon + 1);
  try {
    std::size_t used = 0;
    const unsigned long value = std::stoul(port, &used);
    if (used != port.size() || value > 65535) throw std::out_of_range(port);
    ep.port = static_cast<std::uint16_t>(value);
  } catch (const std::exception&) {
    throw Error(ErrorCode::kConfigInvalid, "bad port in '" + text + "'");
  }
  return ep;
}

std::string Endpoint::ToString() const {
  return host + ":" + std::to_string(port);
}

sockaddr_in Endpoint::ToSockaddr() const {
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(port);
  if (::inet_pton(AF_INET, host.c_str(), &addr.sin_addr) != 1) {
    throw Error(ErrorCode::kConfigInvalid, "bad IPv4 host '" + host + "'");
  }
  return addr;
}

void TransportConfig::Validate() const {
  if (mode == Mode::kUdp && peers.empty()) {
    throw Error(ErrorCode::kConfigInvalid, "udp transport needs at least one peer");
  }
}

UdpSocket UdpSocket::Bind(const Endpoint& address) {
  const int fd = ::socket(AF_INET, SOCK_DGRAM | SOCK_CLOEXEC, 0);
  if (fd < 0) {
    throw Error(ErrorCode::kBindFailure, std::strerror(errno));
  }
  UdpSocket socket(fd);
  // Best effort: a larger buffer absorbs bursts; the forced variant needs
  // CAP_NET_ADMIN and silently falls back.
  int size = kReceiveBufferBytes;
  if (::setsockopt(fd, SOL_SOCKET, SO_RCVBUFFORCE, &size, sizeof(size)) != 0) {
    ::setsockopt(fd, SOL_SOCKET, SO_RCVBUF, &size, sizeof(size));
  }
  sockaddr_in addr;
  try {
    addr = address.ToSockaddr();
  } catch (const Error& e) {
    throw Error(ErrorCode::kBindFailure, e.what());
  }
  if (::bind(fd, reinterpret_cast<const sockaddr*>(&addr), sizeof(addr)) != 0) {
    throw Error(ErrorCode::kBindFailure,
                address.ToString() + ": " + std::strerror(errno));
  }
  return socket;
}

UdpSocket& UdpSocket::operator=(UdpSocket&& other) noexcept {
  if (this != &other) {
    if (fd_ >= 0) ::close(fd_);
    fd_ = std::exchange(other.fd_, -1);
  }
  return *this;
}

UdpSocket::~UdpSocket() {
  if (fd_ >= 0) ::close(fd_);
}

Endpoint UdpSocket::local_endpoint() const {
  sockaddr_in addr{};
  socklen_t len = sizeof(addr);
  ::getsockname(fd_, reinterpret_cast<sockaddr*>(&addr), &len);
  char host[INET_ADDRSTRLEN] = {};
  ::inet_ntop(AF_INET, &addr.sin_addr, host, sizeof(host));
  return Endpoint{host, ntohs(addr.sin_port)};
}

UdpTransport::UdpTransport(Bus& bus, UdpSocket socket,
                           std::vector<Endpoint> peers)
    : bus_(bus), socket_(std::move(socket)) {
  for (const auto& peer : peers) peers_.push_back(peer.ToSockaddr());
}

std::shared_ptr<UdpTransport> UdpTransport::Start(Bus& bus, UdpSocket socket,
                                                  std::vector<Endpoint> peers) {
  if (peers.empty()) {
    throw Error(ErrorCode::kConfigInvalid, "udp transport needs at least one peer");
  }
  std::shared_ptr<UdpTransport> transport(
      new UdpTransport(bus, std::move(socket), std::move(peers)));
  transport->running_ = true;
  transport->receiver_ = std::thread([raw = transport.get()] { raw->ReceiveLoop(); });
  bus.AttachTransport(transport);
  return transport;
}

UdpTransport::~UdpTransport() { Stop(); }

void UdpTransport::Stop() {
  running_ = false;
  if (receiver_.joinable()) receiver_.join();
}

void UdpTransport::Send(const Envelope& envelope) {
  const Bytes frame = EncodeEnvelope(envelope);
  for (const auto& peer : peers_) {
    const ssize_t n =
        ::sendto(socket_.fd(), frame.data(), frame.size(), 0,
                 reinterpret_cast<const sockaddr*>(&peer), sizeof(peer));
    if (n == static_cast<ssize_t>(frame.size())) {
      ++datagrams_sent_;
    } else {
      ++send_errors_;
    }
  }
}

void UdpTransport::HandleDatagram(std::span<const std::uint8_t> datagram,
                                  const std::string& peer) {
  Envelope envelope;
  try {
    envelope = DecodeEnvelope(datagram);
  } catch (const Error&) {
    ++decode_errors_;
    return;
  }
  {
    std::lock_guard lock(stats_mutex_);
    auto& tracker = trackers_[{peer, envelope.topic}];
    const std::int64_t lost_before = tracker.lost();
    const auto verdict = tracker.Observe(envelope.seq);
    auto& stats = topic_stats_[envelope.topic];
    stats.lost += tracker.lost() - lost_before;
    switch (verdict) {
      case SequenceTracker::Verdict::kDuplicate:
        ++stats.duplicates;
        return;
      case SequenceTracker::Verdict::kStale:
        ++stats.stale;
        return;
      case SequenceTracker::Verdict::kAccepted:
        ++stats.received;
        break;
    }
  }
  bus_.Inject(std::move(envelope));
}

UdpTopicStats UdpTransport::Stats(const std::string& topic) const {
  std::lock_guard lock(stats_mutex_);
  auto it = topic_stats_.find(topic);
  return it == topic_stats_.end() ? UdpTopicStats{} : it->second;
}

void UdpTransport::ReceiveLoop() {
  std::vector<std::uint8_t> buffer(64 * 1024);
  while (running_) {
    pollfd pfd{socket_.fd(), POLLIN, 0};
    const int ready = ::poll(&pfd, 1, kPollTimeoutMs);
    if (ready <= 0) continue;
    // Drain everything that is queued before polling again.
    while (true) {
      sockaddr_in from{};
      socklen_t from_len = sizeof(from);
      const ssize_t n = ::recvfrom(socket_.fd(), buffer.data(), buffer.size(),
                                   MSG_DONTWAIT, reinterpret_cast<sockaddr*>(&from),
                                   &from_len);
      if (n < 0) break;
      HandleDatagram(std::span(buffer.data(), static_cast<std::size_t>(n)),
                     SockaddrKey(from));
    }
  }
}

std::shared_ptr<UdpTransport> StartUdpPump(Bus& bus,
                                           const TransportConfig& config) {
  config.Validate();
  if (config.mode != TransportConfig::Mode::kUdp) {
    throw Error(ErrorCode::kConfigInvalid, "transport mode is not udp");
  }
  return UdpTransport::Start(bus, UdpSocket::Bind(config.bind_address),
                             config.peers);
}

}  // namespace scaletwin::bus
