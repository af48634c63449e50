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

#include "scaletwin/bus/bus.h"

#include <algorithm>

#include "scaletwin/error.h"

namespace scaletwin::bus {

Subscription::Subscription(std::string topic, std::size_t queue_depth)
    : topic_(std::move(topic)), queue_depth_(queue_depth) {}

std::optional<EnvelopePtr> Subscription::Pop() {
  std::lock_guard lock(mutex_);
  if (queue_.empty()) return std::nullopt;
  EnvelopePtr front = std::move(queue_.front());
  queue_.pop_front();
  ++received_;
  return front;
}

std::optional<EnvelopePtr> Subscription::WaitPop(
    std::chrono::milliseconds timeout) {
  std::unique_lock lock(mutex_);
  if (!ready_.wait_for(lock, timeout, [this] { return !queue_.empty(); })) {
    return std::nullopt;
  }
  EnvelopePtr front = std::move(queue_.front());
  queue_.pop_front();
  ++received_;
  return front;
}

std::vector<EnvelopePtr> Subscription::Drain() {
  std::lock_guard lock(mutex_);
  std::vector<EnvelopePtr> out(std::make_move_iterator(queue_.begin()),
                               std::make_move_iterator(queue_.end()));
  queue_.clear();
  received_ += out.size();
  return out;
}

std::uint64_t Subscription::received() const {
  std::lock_guard lock(mutex_);
  return received_;
}

std::uint64_t Subscription::dropped() const {
  std::lock_guard lock(mutex_);
  return dropped_;
}

std::size_t Subscription::pending() const {
  std::lock_guard lock(mutex_);
  return queue_.size();
}

void Subscription::Push(EnvelopePtr envelope) {
  {
    std::lock_guard lock(mutex_);
    if (queue_.size() == queue_depth_) {
      queue_.pop_front();
      ++dropped_;
    }
    queue_.push_back(std::move(envelope));
  }
  ready_.notify_one();
}

std::uint64_t Bus::Publish(std::string_view topic,
                           std::span<const std::uint8_t> payload,
                           std::uint64_t timestamp_ns) {
  ValidateTopic(topic);
  // Serializes publishers so delivery order always equals seq order.
  std::lock_guard publish_lock(publish_mutex_);
  std::vector<std::shared_ptr<Subscription>> subscribers;
  std::vector<std::shared_ptr<Transport>> transports;
  std::shared_ptr<Envelope> envelope;
  {
    std::lock_guard lock(mutex_);
    transports = LiveTransports();
    for (const auto& transport : transports) {
      if (payload.size() > transport->max_payload_bytes()) {
        throw Error(ErrorCode::kPayloadTooLarge,
                    std::to_string(payload.size()) + " byte payload on '" +
                        std::string(topic) + "'");
      }
    }
    auto it = topics_.find(topic);
    if (it == topics_.end()) it = topics_.emplace(std::string(topic), TopicState{}).first;
    TopicState& state = it->second;
    envelope = std::make_shared<Envelope>(Envelope{
        std::string(topic), state.next_seq++, timestamp_ns,
        Bytes(payload.begin(), payload.end())});
    subscribers = LiveSubscribers(state);
    ++state.stats.published;
    state.stats.delivered += subscribers.size();
  }
  for (const auto& sub : subscribers) sub->Push(envelope);
  for (const auto& transport : transports) transport->Send(*envelope);
  return envelope->seq;
}

std::shared_ptr<Subscription> Bus::Subscribe(std::string_view topic,
                                             std::size_t queue_depth) {
  ValidateTopic(topic);
  if (queue_depth < 1) {
    throw Error(ErrorCode::kInvalidArgument, "queue_depth must be >= 1");
  }
  auto sub = std::make_shared<Subscription>(std::string(topic), queue_depth);
  std::lock_guard lock(mutex_);
  auto it = topics_.find(topic);
  if (it == topics_.end()) it = topics_.emplace(std::string(topic), TopicState{}).first;
  it->second.subscribers.push_back(sub);
  return sub;
}

void Bus::Inject(Envelope envelope) {
  ValidateTopic(envelope.topic);
  auto shared = std::make_shared<const Envelope>(std::move(envelope));
  std::vector<std::shared_ptr<Subscription>> subscribers;
  {
    std::lock_guard lock(mutex_);
    auto it = topics_.find(shared->topic);
    if (it == topics_.end()) it = topics_.emplace(shared->topic, TopicState{}).first;
    subscribers = LiveSubscribers(it->second);
    ++it->second.stats.injected;
    it->second.stats.delivered += subscribers.size();
  }
  for (const auto& sub : subscribers) sub->Push(shared);
}

void Bus::AttachTransport(std::weak_ptr<Transport> transport) {
  std::lock_guard lock(mutex_);
  transports_.push_back(std::move(transport));
}

TopicStats Bus::Stats(std::string_view topic) const {
  std::lock_guard lock(mutex_);
  auto it = topics_.find(topic);
  return it == topics_.end() ? TopicStats{} : it->second.stats;
}

std::vector<std::string> Bus::Topics() const {
  std::lock_guard lock(mutex_);
  std::vector<std::string> out;
  for (const auto& [name, state] : topics_) out.push_back(name);
  return out;
}

std::vector<std::shared_ptr<Subscription>> Bus::LiveSubscribers(
    TopicState& state) {
  std::vector<std::shared_ptr<Subscription>> live;
  std::erase_if(state.subscribers, [&live](const auto& weak) {
    auto strong = weak.lock();
    if (!strong) return true;
    live.push_back(std::move(strong));
    return false;
  });
  return live;
}

std::vector<std::shared_ptr<Transport>> Bus::LiveTransports() {
  std::vector<std::shared_ptr<Transport>> live;
  std::erase_if(transports_, [&live](const auto& weak) {
    auto strong = weak.lock();
    if (!strong) return true;
    live.push_back(std::move(strong));
    return false;
  });
  return live;
}

}  // namespace scaletwin::bus
