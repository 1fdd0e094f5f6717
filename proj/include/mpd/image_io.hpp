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

#ifndef MPD_IMAGE_IO_HPP_
#define MPD_IMAGE_IO_HPP_

#include <filesystem>
#include <string>

#include "mpd/image.hpp"

namespace mpd {

/// Decodes PNG (1-4 channels kept as stored, 16-bit reduced to 8-bit) or
/// baseline JPEG (gray or RGB), sniffed by signature.
/// Throws Error(kIo) when the file cannot be read, Error(kDecode) otherwise.
ImageBuffer read_image(const std::filesystem::path& path);

/// Header-only probe: width and height without decoding pixels.
struct ImageSize {
  int width = 0;
  int height = 0;
};
ImageSize read_image_size(const std::filesystem::path& path);

void write_png(const std::filesystem::path& path, const ImageBuffer& img);
/// 1 or 3 channels only.
void write_jpeg(const std::filesystem::path& path, const ImageBuffer& img,
                int quality = 95);
/// Chooses PNG or JPEG from the extension (.jpg/.jpeg -> JPEG).
void write_image(const std::filesystem::path& path, const ImageBuffer& img);

/// SHA-256 (lowercase hex) of the decoded raster: width, height and channel
/// count as little-endian uint32, followed by the samples.
std::string pixel_digest(const ImageBuffer& img);

}  // namespace mpd

#endif  // MPD_IMAGE_IO_HPP_
