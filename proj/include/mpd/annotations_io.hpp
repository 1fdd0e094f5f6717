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

#ifndef MPD_ANNOTATIONS_IO_HPP_
#define MPD_ANNOTATIONS_IO_HPP_

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "mpd/annotations.hpp"

namespace mpd {

/// {"image": "...", "points": [[x, y], ...]}
struct PointRecord {
  std::string image;
  std::vector<PixelPoint> points;
};

/// Throws Error(kMalformedRecord) naming the offending line.
std::vector<PointRecord> parse_points_jsonl(std::string_view text);

/// Single JSON line (no trailing newline). `augmented`, when given, must be
/// parallel to rec.points and is emitted as "augmented": [bool, ...];
/// `dropped` is emitted as "dropped": n.
std::string point_record_line(const PointRecord& rec,
                              const std::vector<bool>* augmented = nullptr,
                              std::optional<std::size_t> dropped = std::nullopt);

struct CocoImageInfo {
  long long id = 0;
  std::string file_name;
  int width = 0;
  int height = 0;
};

/// Plan for one image, or nullopt to leave its boxes untouched.
using PlanForImage = std::function<std::optional<WarpPlan>(const CocoImageInfo&)>;

struct CocoTransform {
  nlohmann::json doc;
  std::size_t kept = 0;
  std::size_t dropped = 0;
};

/// Rewrites every annotation bbox ([x, y, w, h], converted to corner form
/// internally) with transform_boxes. Dropped annotations are removed from
/// "annotations" and their ids listed under "mpd": {"dropped_annotations"}.
/// Other fields pass through unchanged.
/// Throws Error(kMalformedRecord) on schema violations.
CocoTransform transform_coco(const nlohmann::json& doc,
                             const PlanForImage& plan_for,
                             int samples_per_edge = kDefaultBoxSamplesPerEdge,
                             double min_area_px = kDefaultMinBoxAreaPx);

}  // namespace mpd

#endif  // MPD_ANNOTATIONS_IO_HPP_
