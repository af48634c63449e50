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

#ifndef SCALETWIN_BUS_BUS_H_
#define SCALETWIN_BUS_BUS_H_

#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "scaletwin/bus/envelope.h"

namespace scaletwin::bus {

// Envelopes are immutable once published; subscribers share one copy.
using EnvelopePtr = std::shared_ptr<const Envelope>;

// Bounded FIFO of envelopes on one topic. When full, the oldest envelope is
// discarded and counted. A handle is consumed by one thread at a time while
// the bus may push from any thread.
class Subscription {
 public:
  Subscription(std::string topic, std::size_t queue_depth);

  Subscription(const Subscription&) = delete;
  Subscription& operator=(const Subscription&) = delete;

  const std::string& topic() const { return topic_; }
  std::size_t queue_depth() const { return queue_depth_; }

  std::optional<EnvelopePtr> Pop();
  // Blocks up to `timeout` for the next envelope.
  std::optional<EnvelopePtr> WaitPop(std::chrono::milliseconds timeout);
  std::vector<EnvelopePtr> Drain();

  // Envelopes handed to the consumer.
  std::uint64_t received() const;
  // Envelopes evicted by the drop-oldest policy.
  std::uint64_t dropped() const;
  std::size_t pending() const;

  void Push(EnvelopePtr envelope);

 private:
  const std::string topic_;
  const std::size_t queue_depth_;
  mutable std::mutex mutex_;
  std::condition_variable ready_;
  std::deque<EnvelopePtr> queue_;
  std::uint64_t received_ = 0;
  std::uint64_t dropped_ = 0;
};

// Outbound side of a network transport. Implementations must be safe to call
// from any publishing thread.
class Transport {
 public:
  virtual ~Transport() = default;
  virtual void Send(const Envelope& envelope) = 0;
  virtual std::size_t max_payload_bytes() const = 0;
};

struct TopicStats {
  std::uint64_t published = 0;  // local Publish() calls
  std::uint64_t injected = 0;   // envelopes arriving from transports
  std::uint64_t delivered = 0;  // copies pushed into local subscriptions
};

class Bus {
 public:
  Bus() = default;
  Bus(const Bus&) = delete;
  Bus& operator=(const Bus&) = delete;

  // Assigns the next per-topic sequence number (starting at 0), delivers to
  // every live local subscription and forwards to every attached transport.
  // Throws kTopicInvalid, or kPayloadTooLarge when a transport is attached
  // and the payload exceeds its limit.
  std::uint64_t Publish(std::string_view topic,
                        std::span<const std::uint8_t> payload,
                        std::uint64_t timestamp_ns);

  // Throws kTopicInvalid, or kInvalidArgument when queue_depth < 1.
  std::shared_ptr<Subscription> Subscribe(std::string_view topic,
                                          std::size_t queue_depth);

  // Local delivery of an envelope received from a transport. The envelope
  // keeps its remote sequence number and is not forwarded again.
  void Inject(Envelope envelope);

  // The bus keeps only a weak reference; dropping the last shared_ptr
  // detaches the transport.
  void AttachTransport(std::weak_ptr<Transport> transport);

  TopicStats Stats(std::string_view topic) const;
  std::vector<std::string> Topics() const;

 private:
  struct TopicState {
    std::uint64_t next_seq = 0;
    TopicStats stats;
    std::vector<std::weak_ptr<Subscription>> subscribers;
  };

  // Caller holds mutex_. Returns the live subscribers and prunes dead ones.
  std::vector<std::shared_ptr<Subscription>> LiveSubscribers(TopicState& state);
  std::vector<std::shared_ptr<Transport>> LiveTransports();

  std::mutex publish_mutex_;
  mutable std::mutex mutex_;
  std::map<std::string, TopicState, std::less<>> topics_;
  std::vector<std::weak_ptr<Transport>> transports_;
};

}  // namespace scaletwin::bus

#endif  // SCALETWIN_BUS_BUS_H_
