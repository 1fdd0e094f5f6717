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

#ifndef MPD_AUTOCROWD_HPP_
#define MPD_AUTOCROWD_HPP_

#include <vector>

#include "mpd/annotations.hpp"
#include "mpd/image.hpp"
#include "mpd/presets.hpp"
#include "mpd/warp.hpp"

namespace mpd {

inline constexpr int kMinHeadRadius = 2;
inline constexpr int kMaxHeadRadius = 64;
/// Radius used when a point has no annotated neighbours.
inline constexpr int kFallbackHeadRadius = 16;

/// Square crop of side 2*radius + 1 around a head annotation.
struct HeadPatch {
  ImageBuffer pixels;
  PixelPoint center;
  int radius = 0;
};

/// Radius = half the mean distance to the k nearest other annotations,
/// rounded and clamped to [kMinHeadRadius, kMaxHeadRadius]. Crops that
/// would leave the image are discarded.
/// Throws Error(kEmptyAnnotations) for an empty point set and
/// Error(kInvalidArgument) for k_neighbors < 1.
std::vector<HeadPatch> extract_head_patches(ImageView src, const PointSet& pts,
                                            int k_neighbors);

struct CrowdComposite {
  ImageBuffer image;
  /// Centres of the pasted patches, in placement order.
  PointSet added;
  /// Number of placements requested from the density target.
  std::size_t requested = 0;
  /// False when the warp produced no background at all.
  bool had_background = false;
};

/// Pastes round(density_per_kpx * background_px / 1000) patches at full
/// opacity. Each placement draws a patch uniformly, then a centre uniformly
/// among positions where that patch lies entirely on background. Pasted
/// patches may overlap each other, never content.
/// Throws Error(kInvalidBackground) unless the warp used Black and
/// Error(kEmptyAnnotations) for an empty patch list.
CrowdComposite compose_autocrowd(const WarpedImage& warped,
                                 const std::vector<HeadPatch>& patches,
                                 double density_per_kpx, SplitMix64 rng);

/// Annotated heads per kilo-pixel of content: the default density, which
/// matches the crowd density of the source scene.
double head_density_per_kpx(std::size_t head_count, std::size_t content_px);

}  // namespace mpd

#endif  // MPD_AUTOCROWD_HPP_
