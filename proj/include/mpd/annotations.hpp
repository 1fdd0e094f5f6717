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

#ifndef MPD_ANNOTATIONS_HPP_
#define MPD_ANNOTATIONS_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "mpd/mobius.hpp"
#include "mpd/warp.hpp"

namespace mpd {

struct PointSet {
  std::vector<PixelPoint> points;
  CoordFrame frame;
};

/// Axis-aligned box in continuous pixel coordinates.
class Box {
 public:
  /// Throws Error(kInvalidArgument) unless x_min < x_max and y_min < y_max
  /// and all corners are finite.
  Box(double x_min, double y_min, double x_max, double y_max);

  double x_min() const noexcept { return x_min_; }
  double y_min() const noexcept { return y_min_; }
  double x_max() const noexcept { return x_max_; }
  double y_max() const noexcept { return y_max_; }
  double area() const noexcept { return (x_max_ - x_min_) * (y_max_ - y_min_); }

  bool contains(PixelPoint p) const noexcept {
    return p.x >= x_min_ && p.x <= x_max_ && p.y >= y_min_ && p.y <= y_max_;
  }

 private:
  double x_min_, y_min_, x_max_, y_max_;
};

struct BoxSet {
  std::vector<Box> boxes;
  CoordFrame frame;
};

struct PointTransform {
  PointSet kept;
  std::size_t dropped = 0;
  /// One entry per input point; 1 when kept.
  std::vector<std::uint8_t> keep;
};

struct BoxTransform {
  BoxSet kept;
  std::size_t dropped = 0;
  std::vector<std::uint8_t> keep;
};

inline constexpr int kDefaultBoxSamplesPerEdge = 8;
inline constexpr double kDefaultMinBoxAreaPx = 1.0;

/// Maps points with the plan's forward map (and fit window). Points whose
/// image leaves the canvas domain, or that sit on the pole, are dropped.
PointTransform transform_points(const PointSet& pts, const WarpPlan& plan);
PointTransform transform_points(const PointSet& pts, const MobiusParams& p,
                                const WarpSpec& spec);

/// Interleaved x,y array variant for foreign callers. `xy.size()` must be
/// even; kept coordinates are written in input order.
struct PointArrayTransform {
  std::vector<double> kept_xy;
  std::vector<std::uint8_t> keep;
};
PointArrayTransform transform_points_array(std::span<const double> xy,
                                           const WarpPlan& plan);

/// Edge-sampled hull: samples_per_edge points per box edge are mapped
/// forward and the axis-aligned extent is clipped to the canvas. Boxes that
/// contain the pole, touch it, or end up below min_area_px are dropped.
BoxTransform transform_boxes(const BoxSet& bx, const WarpPlan& plan,
                             int samples_per_edge = kDefaultBoxSamplesPerEdge,
                             double min_area_px = kDefaultMinBoxAreaPx);
BoxTransform transform_boxes(const BoxSet& bx, const MobiusParams& p,
                             const WarpSpec& spec,
                             int samples_per_edge = kDefaultBoxSamplesPerEdge,
                             double min_area_px = kDefaultMinBoxAreaPx);

}  // namespace mpd

#endif  // MPD_ANNOTATIONS_HPP_
