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

#include "mpd/image.hpp"

#include <algorithm>
#include <string>

#include "mpd/error.hpp"

namespace mpd {

namespace {

void check_dims(int width, int height, int channels, std::size_t size) {
  if (width < 1 || height < 1 || channels < 1 || channels > 4) {
    throw Error(ErrorCode::kInvalidArgument,
                "bad image dimensions " + std::to_string(width) + "x" +
                    std::to_string(height) + "x" + std::to_string(channels));
  }
  if (size != static_cast<std::size_t>(width) * height * channels) {
    throw Error(ErrorCode::kInvalidArgument,
                "buffer holds " + std::to_string(size) + " bytes, expected " +
                    std::to_string(static_cast<std::size_t>(width) * height *
                                   channels));
  }
}

}  // namespace

ImageView::ImageView(std::span<const std::uint8_t> data, int width, int height,
                     int channels)
    : data_(data), width_(width), height_(height), channels_(channels) {
  check_dims(width, height, channels, data.size());
}

ImageBuffer::ImageBuffer(int width, int height, int channels)
    : ImageBuffer(width, height, channels,
                  std::vector<std::uint8_t>(
                      static_cast<std::size_t>(std::max(width, 0)) *
                      std::max(height, 0) * std::max(channels, 0))) {}

ImageBuffer::ImageBuffer(int width, int height, int channels,
                         std::vector<std::uint8_t> data)
    : width_(width), height_(height), channels_(channels),
      data_(std::move(data)) {
  check_dims(width, height, channels, data_.size());
}

Mask::Mask(int width, int height, bool fill)
    : width_(width), height_(height),
      bits_(static_cast<std::size_t>(std::max(width, 0)) * std::max(height, 0),
            fill ? 1 : 0) {}

std::size_t Mask::count() const noexcept {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), 1));
}

}  // namespace mpd
