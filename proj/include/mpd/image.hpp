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

#ifndef MPD_IMAGE_HPP_
#define MPD_IMAGE_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace mpd {

/// Non-owning view over a contiguous row-major 8-bit raster.
class ImageView {
 public:
  /// Throws Error(kInvalidArgument) if dimensions are out of range or
  /// data.size() != width * height * channels.
  ImageView(std::span<const std::uint8_t> data, int width, int height,
            int channels);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  int channels() const noexcept { return channels_; }
  std::span<const std::uint8_t> data() const noexcept { return data_; }

  const std::uint8_t* pixel(int x, int y) const noexcept {
    return data_.data() +
           (static_cast<std::size_t>(y) * width_ + x) * channels_;
  }

 private:
  std::span<const std::uint8_t> data_;
  int width_;
  int height_;
  int channels_;
};

class ImageBuffer {
 public:
  ImageBuffer() = default;
  /// Zero-filled raster; channels in [1, 4].
  ImageBuffer(int width, int height, int channels);
  ImageBuffer(int width, int height, int channels,
              std::vector<std::uint8_t> data);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  int channels() const noexcept { return channels_; }
  bool empty() const noexcept { return data_.empty(); }

  std::span<std::uint8_t> data() noexcept { return data_; }
  std::span<const std::uint8_t> data() const noexcept { return data_; }

  std::uint8_t* pixel(int x, int y) noexcept {
    return data_.data() +
           (static_cast<std::size_t>(y) * width_ + x) * channels_;
  }
  const std::uint8_t* pixel(int x, int y) const noexcept {
    return data_.data() +
           (static_cast<std::size_t>(y) * width_ + x) * channels_;
  }

  ImageView view() const { return {data_, width_, height_, channels_}; }

  friend bool operator==(const ImageBuffer&, const ImageBuffer&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  int channels_ = 0;
  std::vector<std::uint8_t> data_;
};

/// Per-pixel boolean raster stored as bytes (0 or 1).
class Mask {
 public:
  Mask() = default;
  Mask(int width, int height, bool fill);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }

  bool at(int x, int y) const noexcept {
    return bits_[static_cast<std::size_t>(y) * width_ + x] != 0;
  }
  void set(int x, int y, bool v) noexcept {
    bits_[static_cast<std::size_t>(y) * width_ + x] = v ? 1 : 0;
  }

  std::size_t count() const noexcept;
  bool all() const noexcept { return count() == bits_.size(); }
  std::span<const std::uint8_t> bits() const noexcept { return bits_; }

  friend bool operator==(const Mask&, const Mask&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> bits_;
};

}  // namespace mpd

#endif  // MPD_IMAGE_HPP_
