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

#ifndef MPD_ERROR_HPP_
#define MPD_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace mpd {

enum class ErrorCode {
  kNonFinite,
  kDegenerateParams,
  kNearPole,
  kInvalidArgument,
  kInvalidIntensity,
  kInvalidPolicy,
  kEmptyAnnotations,
  kInvalidBackground,
  kMalformedRecord,
  kMissingSubset,
  kLabelMismatch,
  kIo,
  kDecode,
  kEmptyInput,
};

/// Stable name of an error code, e.g. "DegenerateParams".
std::string_view error_name(ErrorCode code) noexcept;

/// The single exception type raised by the library. The message always
/// starts with error_name(code()) so foreign layers can match on it.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace mpd

#endif  // MPD_ERROR_HPP_
