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

#ifndef SCALETWIN_BUS_UDP_TRANSPORT_H_
#define SCALETWIN_BUS_UDP_TRANSPORT_H_

#include <netinet/in.h>

#include <atomic>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "scaletwin/bus/bus.h"
#include "scaletwin/bus/sequence_tracker.h"

namespace scaletwin::bus {

// IPv4 host:port.
struct Endpoint {
  std::string host = "127.0.0.1";
  std::uint16_t port = 0;

  // Throws Error(kConfigInvalid) on anything but "a.b.c.d:port".
  static Endpoint Parse(const std::string& text);
  std::string ToString() const;
  sockaddr_in ToSockaddr() const;

  friend bool operator==(const Endpoint&, const Endpoint&) = default;
};

struct TransportConfig {
  enum class Mode { kInProcess, kUdp };

  Mode mode = Mode::kInProcess;
  Endpoint bind_address;
  std::vector<Endpoint> peers;

  // Throws Error(kConfigInvalid); UDP mode needs at least one peer.
  void Validate() const;
};

// Bound, non-connected datagram socket.
class UdpSocket {
 public:
  // Throws Error(kBindFailure). Port 0 picks an ephemeral port.
  static UdpSocket Bind(const Endpoint& address);

  UdpSocket(UdpSocket&& other) noexcept : fd_(std::exchange(other.fd_, -1)) {}
  UdpSocket& operator=(UdpSocket&& other) noexcept;
  UdpSocket(const UdpSocket&) = delete;
  UdpSocket& operator=(const UdpSocket&) = delete;
  ~UdpSocket();

  int fd() const { return fd_; }
  Endpoint local_endpoint() const;

 private:
  explicit UdpSocket(int fd) : fd_(fd) {}
  int fd_ = -1;
};

struct UdpTopicStats {
  std::uint64_t received = 0;    // accepted and injected into the bus
  std::uint64_t duplicates = 0;  // suppressed by the seq window
  std::uint64_t stale = 0;       // older than the seq window
  std::int64_t lost = 0;         // seq gaps not (yet) filled
};

// Sends every published envelope as one datagram to each peer and injects
// decoded inbound datagrams into the bus. Malformed datagrams are counted,
// never fatal.
class UdpTransport : public Transport,
                     public std::enable_shared_from_this<UdpTransport> {
 public:
  // Attaches to `bus` and starts the receive thread. Throws
  // Error(kConfigInvalid) when `peers` is empty.
  static std::shared_ptr<UdpTransport> Start(Bus& bus, UdpSocket socket,
                                             std::vector<Endpoint> peers);

  ~UdpTransport() override;

  void Stop();

  void Send(const Envelope& envelope) override;
  std::size_t max_payload_bytes() const override { return kMaxUdpPayloadBytes; }

  // Entry point of the receive loop, exposed so tests can inject raw
  // datagrams. `peer` identifies the sender for duplicate suppression.
  void HandleDatagram(std::span<const std::uint8_t> datagram,
                      const std::string& peer);

  Endpoint local_endpoint() const { return socket_.local_endpoint(); }
  UdpTopicStats Stats(const std::string& topic) const;
  std::uint64_t decode_errors() const { return decode_errors_.load(); }
  std::uint64_t send_errors() const { return send_errors_.load(); }
  std::uint64_t datagrams_sent() const { return datagrams_sent_.load(); }

 private:
  UdpTransport(Bus& bus, UdpSocket socket, std::vector<Endpoint> peers);
  void ReceiveLoop();

  Bus& bus_;
  UdpSocket socket_;
  std::vector<sockaddr_in> peers_;
  std::atomic<bool> running_{false};
  std::thread receiver_;

  mutable std::mutex stats_mutex_;
  // Keyed by (peer, topic).
  std::map<std::pair<std::string, std::string>, SequenceTracker> trackers_;
  std::map<std::string, UdpTopicStats> topic_stats_;

  std::atomic<std::uint64_t> decode_errors_{0};
  std::atomic<std::uint64_t> send_errors_{0};
  std::atomic<std::uint64_t> datagrams_sent_{0};
};

// Binds config.bind_address and starts a transport towards config.peers.
std::shared_ptr<UdpTransport> StartUdpPump(Bus& bus,
                                           const TransportConfig& config);

}  // namespace scaletwin::bus

#endif  // SCALETWIN_BUS_UDP_TRANSPORT_H_
