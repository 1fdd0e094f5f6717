// Copyright 2026 The MPD Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mpd/error.hpp"

namespace mpd {

std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kNonFinite: return "NonFinite";
    case ErrorCode::kDegenerateParams: return "DegenerateParams";
    case ErrorCode::kNearPole: return "NearPole";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kInvalidIntensity: return "InvalidIntensity";
    case ErrorCode::kInvalidPolicy: return "InvalidPolicy";
    case ErrorCode::kEmptyAnnotations: return "EmptyAnnotations";
    case ErrorCode::kInvalidBackground: return "InvalidBackground";
    case ErrorCode::kMalformedRecord: return "MalformedRecord";
    case ErrorCode::kMissingSubset: return "MissingSubset";
    case ErrorCode::kLabelMismatch: return "LabelMismatch";
    case ErrorCode::kIo: return "IoError";
    case ErrorCode::kDecode: return "DecodeError";
    case ErrorCode::kEmptyInput: return "EmptyInput";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(error_name(code)) +
                         (detail.empty() ? "" : ": " + detail)),
      code_(code) {}

}  // namespace mpd
