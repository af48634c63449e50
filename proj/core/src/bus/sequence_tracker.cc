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

#include "scaletwin/bus/sequence_tracker.h"

namespace scaletwin::bus {

SequenceTracker::Verdict SequenceTracker::Observe(std::uint64_t seq) {
  if (!initialized_) {
    initialized_ = true;
    highest_ = seq;
    seen_mask_ = 1;
    ++accepted_;
    return Verdict::kAccepted;
  }
  if (seq > highest_) {
    const std::uint64_t shift = seq - highest_;
    lost_ += static_cast<std::int64_t>(shift - 1);
    seen_mask_ = shift >= kWindow ? 1 : (seen_mask_ << shift) | 1;
    highest_ = seq;
    ++accepted_;
    return Verdict::kAccepted;
  }
  const std::uint64_t offset = highest_ - seq;
  if (offset >= kWindow) {
    ++stale_;
    return Verdict::kStale;
  }
  const std::uint64_t bit = std::uint64_t{1} << offset;
  if (seen_mask_ & bit) {
    ++duplicates_;
    return Verdict::kDuplicate;
  }
  seen_mask_ |= bit;
  --lost_;
  ++accepted_;
  return Verdict::kAccepted;
}

}  // namespace scaletwin::bus
