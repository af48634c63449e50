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

#include "scaletwin/bus/envelope.h"

#include <algorithm>
#include <cstring>

#include "scaletwin/error.h"

namespace scaletwin::bus {
namespace {

constexpr std::uint8_t kMagic[4] = {'X', 'T', 'M', 'B'};

// Writes `value` little-endian at `at` and returns the position after it.
template <typename T>
std::uint8_t* PutLittleEndian(std::uint8_t* at, T value) {
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    *at++ = static_cast<std::uint8_t>(value >> (8 * i));
  }
  return at;
}

class FrameReader {
 public:
  explicit FrameReader(std::span<const std::uint8_t> frame) : frame_(frame) {}

  std::span<const std::uint8_t> Take(std::size_t n, const char* field) {
    if (frame_.size() - offset_ < n) {
      throw Error(ErrorCode::kTruncatedFrame,
                  std::string("frame ends inside ") + field);
    }
    auto out = frame_.subspan(offset_, n);
    offset_ += n;
    return out;
  }

  template <typename T>
  T TakeLittleEndian(const char* field) {
    auto bytes = Take(sizeof(T), field);
    T value = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) {
      value |= static_cast<T>(bytes[i]) << (8 * i);
    }
    return value;
  }

  std::size_t remaining() const { return frame_.size() - offset_; }

 private:
  std::span<const std::uint8_t> frame_;
  std::size_t offset_ = 0;
};

}  // namespace

bool IsValidUtf8(std::string_view text) {
  std::size_t i = 0;
  const auto* s = reinterpret_cast<const unsigned char*>(text.data());
  const std::size_t n = text.size();
  while (i < n) {
    const unsigned char c = s[i];
    std::size_t extra;
    std::uint32_t cp;
    if (c < 0x80) {
      ++i;
      continue;
    } else if ((c & 0xE0) == 0xC0) {
      extra = 1;
      cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
      extra = 2;
      cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
      extra = 3;
      cp = c & 0x07;
    } else {
      return false;
    }
    if (n - i <= extra) return false;
    for (std::size_t k = 1; k <= extra; ++k) {
      if ((s[i + k] & 0xC0) != 0x80) return false;
      cp = (cp << 6) | (s[i + k] & 0x3F);
    }
    // Reject overlong forms, surrogates and values past U+10FFFF.
    static constexpr std::uint32_t kMinForLength[] = {0, 0x80, 0x800, 0x10000};
    if (cp < kMinForLength[extra]) return false;
    if (cp >= 0xD800 && cp <= 0xDFFF) return false;
    if (cp > 0x10FFFF) return false;
    i += extra + 1;
  }
  return true;
}

void ValidateTopic(std::string_view topic) {
  if (topic.empty() || topic.size() > kMaxTopicBytes) {
    throw Error(ErrorCode::kTopicInvalid, "topic must be 1-255 bytes");
  }
  if (topic.find('\0') != std::string_view::npos) {
    throw Error(ErrorCode::kTopicInvalid, "topic contains NUL");
  }
  if (!IsValidUtf8(topic)) {
    throw Error(ErrorCode::kTopicInvalid, "topic is not UTF-8");
  }
}

Bytes EncodeEnvelope(const Envelope& envelope) {
  ValidateTopic(envelope.topic);
  if (envelope.payload.size() > UINT32_MAX) {
    throw Error(ErrorCode::kPayloadTooLarge, "payload exceeds u32 length");
  }
  Bytes out(kFrameOverheadBytes + envelope.topic.size() + envelope.payload.size());
  std::uint8_t* at = std::copy(std::begin(kMagic), std::end(kMagic), out.data());
  *at++ = kWireVersion;
  at = PutLittleEndian<std::uint16_t>(at, static_cast<std::uint16_t>(envelope.topic.size()));
  at = std::copy(envelope.topic.begin(), envelope.topic.end(), at);
  at = PutLittleEndian<std::uint64_t>(at, envelope.seq);
  at = PutLittleEndian<std::uint64_t>(at, envelope.timestamp_ns);
  at = PutLittleEndian<std::uint32_t>(at, static_cast<std::uint32_t>(envelope.payload.size()));
  std::copy(envelope.payload.begin(), envelope.payload.end(), at);
  return out;
}

Envelope DecodeEnvelope(std::span<const std::uint8_t> frame) {
  FrameReader reader(frame);
  auto magic = reader.Take(4, "magic");
  if (std::memcmp(magic.data(), kMagic, 4) != 0) {
    throw Error(ErrorCode::kBadMagic, "frame does not start with XTMB");
  }
  const auto version = reader.TakeLittleEndian<std::uint8_t>("version");
  if (version != kWireVersion) {
    throw Error(ErrorCode::kBadVersion,
                "unsupported wire version " + std::to_string(version));
  }
  const auto topic_len = reader.TakeLittleEndian<std::uint16_t>("topic_len");
  auto topic_bytes = reader.Take(topic_len, "topic");
  Envelope env;
  env.topic.assign(topic_bytes.begin(), topic_bytes.end());
  if (!IsValidUtf8(env.topic)) {
    throw Error(ErrorCode::kTopicNotUtf8, "topic bytes are not UTF-8");
  }
  ValidateTopic(env.topic);
  env.seq = reader.TakeLittleEndian<std::uint64_t>("seq");
  env.timestamp_ns = reader.TakeLittleEndian<std::uint64_t>("timestamp_ns");
  const auto payload_len = reader.TakeLittleEndian<std::uint32_t>("payload_len");
  auto payload = reader.Take(payload_len, "payload");
  env.payload.assign(payload.begin(), payload.end());
  if (reader.remaining() != 0) {
    throw Error(ErrorCode::kLengthMismatch,
                std::to_string(reader.remaining()) + " trailing bytes");
  }
  return env;
}

}  // namespace scaletwin::bus
