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

#include "mpd/annotations.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

namespace mpd {

namespace {

void check_frame(const CoordFrame& frame, const WarpPlan& plan) {
  if (frame.width() != plan.frame.width() ||
      frame.height() != plan.frame.height()) {
    throw Error(ErrorCode::kInvalidArgument,
                "annotation frame does not match the warp canvas");
  }
}

std::optional<PixelPoint> map_point(const WarpPlan& plan, PixelPoint p) {
  if (!std::isfinite(p.x) || !std::isfinite(p.y)) return std::nullopt;
  const auto w = try_forward_map(plan.params, px_to_complex(plan.frame, p));
  if (!w) return std::nullopt;
  const ComplexValue u = plan.content_to_canvas(*w);
  if (!plan.frame.domain().contains(u)) return std::nullopt;
  return complex_to_px(plan.frame, u);
}

}  // namespace

Box::Box(double x_min, double y_min, double x_max, double y_max)
    : x_min_(x_min), y_min_(y_min), x_max_(x_max), y_max_(y_max) {
  if (!std::isfinite(x_min) || !std::isfinite(y_min) || !std::isfinite(x_max) ||
      !std::isfinite(y_max) || !(x_min < x_max) || !(y_min < y_max)) {
    throw Error(ErrorCode::kInvalidArgument,
                "box needs x_min < x_max and y_min < y_max");
  }
}

PointTransform transform_points(const PointSet& pts, const WarpPlan& plan) {
  check_frame(pts.frame, plan);
  PointTransform out{{{}, plan.frame}, 0, {}};
  out.keep.reserve(pts.points.size());
  for (const PixelPoint& p : pts.points) {
    if (const auto q = map_point(plan, p)) {
      out.kept.points.push_back(*q);
      out.keep.push_back(1);
    } else {
      ++out.dropped;
      out.keep.push_back(0);
    }
  }
  return out;
}

PointTransform transform_points(const PointSet& pts, const MobiusParams& p,
                                const WarpSpec& spec) {
  return transform_points(
      pts, make_plan(p, pts.frame.width(), pts.frame.height(), spec));
}

PointArrayTransform transform_points_array(std::span<const double> xy,
                                           const WarpPlan& plan) {
  if (xy.size() % 2 != 0) {
    throw Error(ErrorCode::kInvalidArgument, "point array must be N x 2");
  }
  PointArrayTransform out;
  out.keep.reserve(xy.size() / 2);
  for (std::size_t i = 0; i < xy.size(); i += 2) {
    if (const auto q = map_point(plan, {xy[i], xy[i + 1]})) {
      out.kept_xy.push_back(q->x);
      out.kept_xy.push_back(q->y);
      out.keep.push_back(1);
    } else {
      out.keep.push_back(0);
    }
  }
  return out;
}

BoxTransform transform_boxes(const BoxSet& bx, const WarpPlan& plan,
                             int samples_per_edge, double min_area_px) {
  check_frame(bx.frame, plan);
  if (samples_per_edge < 2) {
    throw Error(ErrorCode::kInvalidArgument, "samples_per_edge must be >= 2");
  }
  const double x_hi = plan.frame.width() - 1;
  const double y_hi = plan.frame.height() - 1;

  // An interior pole sends the box to an unbounded region.
  std::optional<PixelPoint> pole;
  if (plan.params.c().abs() > 0.0) {
    const ComplexValue zp = ComplexValue(0.0, 0.0) - plan.params.d() / plan.params.c();
    pole = complex_to_px(plan.frame, zp);
  }

  BoxTransform out{{{}, plan.frame}, 0, {}};
  out.keep.reserve(bx.boxes.size());
  for (const Box& box : bx.boxes) {
    bool ok = !(pole && box.contains(*pole));
    constexpr double kInf = std::numeric_limits<double>::infinity();
    double lx = kInf, ly = kInf, hx = -kInf, hy = -kInf;
    const int last = samples_per_edge - 1;
    auto visit = [&](double x, double y) {
      const auto w =
          try_forward_map(plan.params, px_to_complex(plan.frame, {x, y}));
      if (!w) {
        ok = false;
        return;
      }
      const PixelPoint q = complex_to_px(plan.frame, plan.content_to_canvas(*w));
      lx = std::min(lx, q.x);
      hx = std::max(hx, q.x);
      ly = std::min(ly, q.y);
      hy = std::max(hy, q.y);
    };
    for (int i = 0; ok && i <= last; ++i) {
      const double t = static_cast<double>(i) / last;
      const double x = i == last ? box.x_max() : box.x_min() + t * (box.x_max() - box.x_min());
      const double y = i == last ? box.y_max() : box.y_min() + t * (box.y_max() - box.y_min());
      visit(x, box.y_min());
      visit(x, box.y_max());
      visit(box.x_min(), y);
      visit(box.x_max(), y);
    }
    if (ok) {
      lx = std::max(lx, 0.0);
      ly = std::max(ly, 0.0);
      hx = std::min(hx, x_hi);
      hy = std::min(hy, y_hi);
      ok = hx > lx && hy > ly && (hx - lx) * (hy - ly) >= min_area_px;
    }
    if (ok) {
      out.kept.boxes.emplace_back(lx, ly, hx, hy);
      out.keep.push_back(1);
    } else {
      ++out.dropped;
      out.keep.push_back(0);
    }
  }
  return out;
}

BoxTransform transform_boxes(const BoxSet& bx, const MobiusParams& p,
                             const WarpSpec& spec, int samples_per_edge,
                             double min_area_px) {
  return transform_boxes(
      bx, make_plan(p, bx.frame.width(), bx.frame.height(), spec),
      samples_per_edge, min_area_px);
}

}  // namespace mpd
