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

#ifndef SCALETWIN_ERROR_H_
#define SCALETWIN_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace scaletwin {

// Failure categories shared by every module. The CLI maps these to exit
// codes, so new values go at the end.
enum class ErrorCode {
  kDomainError,
  kInvalidArgument,
  kTopicInvalid,
  kPayloadTooLarge,
  kBadMagic,
  kBadVersion,
  kTruncatedFrame,
  kTopicNotUtf8,
  kLengthMismatch,
  kBindFailure,
  kDegenerateCalibration,
  kPoseOutOfBounds,
  kIoError,
  kMalformedMetadata,
  kMalformedImage,
  kDimensionMismatch,
  kOutOfGrid,
  kDegenerateHessian,
  kInsufficientReturns,
  kInsideObstacle,
  kConfigInvalid,
  kWorldLoadFailure,
  kMalformedLog,
  kMissingTrace,
  kSamplingUnsupported,
};

std::string_view ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace scaletwin

#endif  // SCALETWIN_ERROR_H_
