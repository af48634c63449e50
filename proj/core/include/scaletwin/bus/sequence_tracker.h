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

#ifndef SCALETWIN_BUS_SEQUENCE_TRACKER_H_
#define SCALETWIN_BUS_SEQUENCE_TRACKER_H_

#include <cstdint>

namespace scaletwin::bus {

// Gap and duplicate detection for one (peer, topic) stream. Remembers the
// last 64 sequence numbers. A gap is counted as lost immediately; if the
// missing envelope arrives later inside the window it is accepted and the
// loss is taken back.
class SequenceTracker {
 public:
  static constexpr std::uint64_t kWindow = 64;

  enum class Verdict { kAccepted, kDuplicate, kStale };

  Verdict Observe(std::uint64_t seq);

  std::int64_t lost() const { return lost_; }
  std::uint64_t duplicates() const { return duplicates_; }
  std::uint64_t stale() const { return stale_; }
  std::uint64_t accepted() const { return accepted_; }

 private:
  bool initialized_ = false;
  std::uint64_t highest_ = 0;
  std::uint64_t seen_mask_ = 0;  // bit i set: highest_ - i was seen
  std::int64_t lost_ = 0;
  std::uint64_t duplicates_ = 0;
  std::uint64_t stale_ = 0;
  std::uint64_t accepted_ = 0;
};

}  // namespace scaletwin::bus

#endif  // SCALETWIN_BUS_SEQUENCE_TRACKER_H_
