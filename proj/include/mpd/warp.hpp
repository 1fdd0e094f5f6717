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

#ifndef MPD_WARP_HPP_
#define MPD_WARP_HPP_

#include <array>
#include <cstdint>
#include <memory>

#include "mpd/image.hpp"
#include "mpd/mobius.hpp"

namespace mpd {

enum class Background { kBlack, kIntegratedPadding };
enum class Interpolation { kNearest, kBilinear };
enum class Fit { kNone, kBoundingBoxFit };

struct WarpSpec {
  Background background = Background::kBlack;
  Interpolation interpolation = Interpolation::kBilinear;
  Fit fit = Fit::kNone;
  FrameConvention frame = FrameConvention::kCentered;

  friend bool operator==(const WarpSpec&, const WarpSpec&) = default;
};

/// Boundary samples per edge used to size the BoundingBoxFit window.
inline constexpr int kFitProbeSamplesPerEdge = 64;

/// Affine correspondence between the canvas domain and the bounding box of
/// the forward image of that domain (BoundingBoxFit).
class FitWindow {
 public:
  FitWindow(NormalizedRect domain, NormalizedRect content);

  const NormalizedRect& domain() const noexcept { return domain_; }
  const NormalizedRect& content() const noexcept { return content_; }

  /// Canvas coordinate -> forward-image coordinate.
  ComplexValue to_content(ComplexValue u) const;
  /// Forward-image coordinate -> canvas coordinate.
  ComplexValue to_canvas(ComplexValue w) const;

 private:
  NormalizedRect domain_;
  NormalizedRect content_;
};

/// Everything needed to resample one canvas; shared by the image warp and the
/// annotation transforms so both see the same fit window.
struct WarpPlan {
  CoordFrame frame;
  MobiusParams params;
  WarpSpec spec;
  /// Null unless spec.fit == kBoundingBoxFit.
  std::shared_ptr<const FitWindow> window;

  /// Output-canvas normalized coordinate -> coordinate in forward-image space.
  ComplexValue canvas_to_content(ComplexValue u) const {
    return window ? window->to_content(u) : u;
  }
  ComplexValue content_to_canvas(ComplexValue w) const {
    return window ? window->to_canvas(w) : w;
  }
};

/// Builds the plan; runs forward_boundary_probe when fitting is requested.
WarpPlan make_plan(const MobiusParams& p, int width, int height,
                   const WarpSpec& spec);

struct WarpedImage {
  ImageBuffer image;
  /// true where the pixel was sourced from input content.
  Mask mask;
  WarpPlan plan;

  const MobiusParams& params() const noexcept { return plan.params; }
  const WarpSpec& spec() const noexcept { return plan.spec; }
};

/// Inverse-mapping resampler. Output canvas equals the input size. Pixels
/// whose preimage leaves the domain are 0 in every channel (Black) or sample
/// the domain-clamped preimage (IntegratedPadding).
WarpedImage warp_image(ImageView src, const WarpPlan& plan);
WarpedImage warp_image(ImageView src, const MobiusParams& p,
                       const WarpSpec& spec);

inline const Mask& content_mask(const WarpedImage& w) noexcept {
  return w.mask;
}

/// Bounding box of forward_map over samples_per_edge uniformly spaced points
/// on each edge of frame.domain() (corners included).
/// Throws Error(kInvalidArgument) for samples_per_edge < 2 and
/// Error(kNearPole) if a sample hits the pole.
NormalizedRect forward_boundary_probe(const MobiusParams& p,
                                      const CoordFrame& frame,
                                      int samples_per_edge);

using PixelValue = std::array<std::uint8_t, 4>;

/// Samples src at normalized coordinate z (caller clamps into the domain).
/// Nearest rounds to the closest grid point, exact .5 ties go to the lower
/// index. Bilinear blends the four neighbours and rounds half up.
PixelValue sample(ImageView src, const CoordFrame& frame, ComplexValue z,
                  Interpolation mode) noexcept;

}  // namespace mpd

#endif  // MPD_WARP_HPP_
