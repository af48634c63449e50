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

#ifndef SCALETWIN_BUS_ENVELOPE_H_
#define SCALETWIN_BUS_ENVELOPE_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace scaletwin::bus {

using Bytes = std::vector<std::uint8_t>;

inline constexpr std::size_t kMaxTopicBytes = 255;
inline constexpr std::size_t kMaxUdpPayloadBytes = 60 * 1024;
inline constexpr std::uint8_t kWireVersion = 1;
// magic + version + topic_len + seq + timestamp + payload_len
inline constexpr std::size_t kFrameOverheadBytes = 4 + 1 + 2 + 8 + 8 + 4;

struct Envelope {
  std::string topic;
  std::uint64_t seq = 0;
  std::uint64_t timestamp_ns = 0;
  Bytes payload;

  friend bool operator==(const Envelope&, const Envelope&) = default;
};

bool IsValidUtf8(std::string_view text);

// Throws Error(kTopicInvalid) unless the topic is 1-255 bytes of UTF-8
// without embedded NUL.
void ValidateTopic(std::string_view topic);

// Wire frame, little-endian:
//   "XTMB" | u8 version | u16 topic_len | topic | u64 seq | u64 timestamp_ns |
//   u32 payload_len | payload
Bytes EncodeEnvelope(const Envelope& envelope);

// Inverse of EncodeEnvelope. The frame must be consumed exactly; errors are
// kBadMagic, kBadVersion, kTruncatedFrame, kTopicNotUtf8, kTopicInvalid and
// kLengthMismatch (trailing bytes).
Envelope DecodeEnvelope(std::span<const std::uint8_t> frame);

}  // namespace scaletwin::bus

#endif  // SCALETWIN_BUS_ENVELOPE_H_
