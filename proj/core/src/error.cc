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

#include "scaletwin/error.h"

namespace scaletwin {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDomainError: return "domain-error";
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kTopicInvalid: return "topic-invalid";
    case ErrorCode::kPayloadTooLarge: return "payload-too-large";
    case ErrorCode::kBadMagic: return "bad-magic";
    case ErrorCode::kBadVersion: return "bad-version";
    case ErrorCode::kTruncatedFrame: return "truncated-frame";
    case ErrorCode::kTopicNotUtf8: return "topic-not-utf8";
    case ErrorCode::kLengthMismatch: return "length-mismatch";
    case ErrorCode::kBindFailure: return "bind-failure";
    case ErrorCode::kDegenerateCalibration: return "degenerate-calibration";
    case ErrorCode::kPoseOutOfBounds: return "pose-out-of-bounds";
    case ErrorCode::kIoError: return "io-error";
    case ErrorCode::kMalformedMetadata: return "malformed-metadata";
    case ErrorCode::kMalformedImage: return "malformed-image";
    case ErrorCode::kDimensionMismatch: return "dimension-mismatch";
    case ErrorCode::kOutOfGrid: return "out-of-grid";
    case ErrorCode::kDegenerateHessian: return "degenerate-hessian";
    case ErrorCode::kInsufficientReturns: return "insufficient-returns";
    case ErrorCode::kInsideObstacle: return "inside-obstacle";
    case ErrorCode::kConfigInvalid: return "config-invalid";
    case ErrorCode::kWorldLoadFailure: return "world-load-failure";
    case ErrorCode::kMalformedLog: return "malformed-log";
    case ErrorCode::kMissingTrace: return "missing-trace";
    case ErrorCode::kSamplingUnsupported: return "sampling-unsupported-platform";
  }
  return "unknown";
}

namespace {

std::string Describe(ErrorCode code, const std::string& message) {
  const std::string_view name = ErrorCodeName(code);
  std::string out;
  out.reserve(name.size() + 2 + message.size());
  out.append(name.data(), name.size()).append(": ").append(message);
  return out;
}

}  // namespace

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(Describe(code, message)), code_(code) {}

}  // namespace scaletwin
