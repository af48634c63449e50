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

#include "scaletwin/harness/exit_status.h"

namespace scaletwin::harness {

ExitStatus ExitStatusFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kConfigInvalid:
    case ErrorCode::kWorldLoadFailure:
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kDegenerateCalibration:
    case ErrorCode::kBindFailure:
      return {kExitConfig, "config"};
    case ErrorCode::kIoError:
      return {kExitIo, "io"};
    case ErrorCode::kBadMagic:
    case ErrorCode::kBadVersion:
    case ErrorCode::kTruncatedFrame:
    case ErrorCode::kTopicNotUtf8:
    case ErrorCode::kLengthMismatch:
    case ErrorCode::kMalformedMetadata:
    case ErrorCode::kMalformedImage:
    case ErrorCode::kDimensionMismatch:
    case ErrorCode::kMalformedLog:
    case ErrorCode::kMissingTrace:
      return {kExitData, "data"};
    case ErrorCode::kSamplingUnsupported:
      return {kExitUnsupported, "unsupported"};
    case ErrorCode::kDomainError:
    case ErrorCode::kTopicInvalid:
    case ErrorCode::kPayloadTooLarge:
    case ErrorCode::kPoseOutOfBounds:
    case ErrorCode::kOutOfGrid:
    case ErrorCode::kDegenerateHessian:
    case ErrorCode::kInsufficientReturns:
    case ErrorCode::kInsideObstacle:
      break;
  }
  return {kExitRuntime, "runtime"};
}

}  // namespace scaletwin::harness
