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

#include "mpd/warp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mpd {

FitWindow::FitWindow(NormalizedRect domain, NormalizedRect content)
    : domain_(domain), content_(content) {
  if (!(content.width() > 0.0) || !(content.height() > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "fit window has zero extent");
  }
}

ComplexValue FitWindow::to_content(ComplexValue u) const {
  return {content_.re_lo +
              (u.re() - domain_.re_lo) / domain_.width() * content_.width(),
          content_.im_lo +
              (u.im() - domain_.im_lo) / domain_.height() * content_.height()};
}

ComplexValue FitWindow::to_canvas(ComplexValue w) const {
  return {domain_.re_lo +
              (w.re() - content_.re_lo) / content_.width() * domain_.width(),
          domain_.im_lo +
              (w.im() - content_.im_lo) / content_.height() * domain_.height()};
}

WarpPlan make_plan(const MobiusParams& p, int width, int height,
                   const WarpSpec& spec) {
  WarpPlan plan{CoordFrame(width, height, spec.frame), p, spec, nullptr};
  if (spec.fit == Fit::kBoundingBoxFit) {
    const NormalizedRect box =
        forward_boundary_probe(p, plan.frame, kFitProbeSamplesPerEdge);
    plan.window = std::make_shared<const FitWindow>(plan.frame.domain(), box);
  }
  return plan;
}

NormalizedRect forward_boundary_probe(const MobiusParams& p,
                                      const CoordFrame& frame,
                                      int samples_per_edge) {
  if (samples_per_edge < 2) {
    throw Error(ErrorCode::kInvalidArgument, "samples_per_edge must be >= 2");
  }
  const NormalizedRect dom = frame.domain();
  constexpr double kInf = std::numeric_limits<double>::infinity();
  NormalizedRect box{kInf, -kInf, kInf, -kInf};
  auto visit = [&](double re, double im) {
    const ComplexValue w = forward_map(p, {re, im});
    box.re_lo = std::min(box.re_lo, w.re());
    box.re_hi = std::max(box.re_hi, w.re());
    box.im_lo = std::min(box.im_lo, w.im());
    box.im_hi = std::max(box.im_hi, w.im());
  };
  const int last = samples_per_edge - 1;
  for (int i = 0; i <= last; ++i) {
    // Exact endpoints so corners are hit without rounding.
    const double t = static_cast<double>(i) / last;
    const double re = i == last ? dom.re_hi : dom.re_lo + t * dom.width();
    const double im = i == last ? dom.im_hi : dom.im_lo + t * dom.height();
    visit(re, dom.im_lo);
    visit(re, dom.im_hi);
    visit(dom.re_lo, im);
    visit(dom.re_hi, im);
  }
  return box;
}

PixelValue sample(ImageView src, const CoordFrame& frame, ComplexValue z,
                  Interpolation mode) noexcept {
  PixelValue out{};
  const int w = src.width();
  const int h = src.height();
  const int ch = src.channels();
  const PixelPoint p = complex_to_px(frame, z);

  if (mode == Interpolation::kNearest) {
    const int ix = std::clamp(static_cast<int>(std::ceil(p.x - 0.5)), 0, w - 1);
    const int iy = std::clamp(static_cast<int>(std::ceil(p.y - 0.5)), 0, h - 1);
    const std::uint8_t* px = src.pixel(ix, iy);
    std::copy(px, px + ch, out.begin());
    return out;
  }

  const double fx0 = std::clamp(std::floor(p.x), 0.0, static_cast<double>(w - 1));
  const double fy0 = std::clamp(std::floor(p.y), 0.0, static_cast<double>(h - 1));
  const int x0 = static_cast<int>(fx0);
  const int y0 = static_cast<int>(fy0);
  const int x1 = std::min(x0 + 1, w - 1);
  const int y1 = std::min(y0 + 1, h - 1);
  const double tx = std::clamp(p.x - fx0, 0.0, 1.0);
  const double ty = std::clamp(p.y - fy0, 0.0, 1.0);
  const std::uint8_t* p00 = src.pixel(x0, y0);
  const std::uint8_t* p10 = src.pixel(x1, y0);
  const std::uint8_t* p01 = src.pixel(x0, y1);
  const std::uint8_t* p11 = src.pixel(x1, y1);
  for (int c = 0; c < ch; ++c) {
    const double top = p00[c] + tx * (p10[c] - p00[c]);
    const double bot = p01[c] + tx * (p11[c] - p01[c]);
    const double v = top + ty * (bot - top);
    out[c] = static_cast<std::uint8_t>(std::clamp(std::floor(v + 0.5), 0.0, 255.0));
  }
  return out;
}

WarpedImage warp_image(ImageView src, const WarpPlan& plan) {
  if (plan.frame.width() != src.width() || plan.frame.height() != src.height()) {
    throw Error(ErrorCode::kInvalidArgument, "plan frame does not match image");
  }
  const int w = src.width();
  const int h = src.height();
  const int ch = src.channels();
  const NormalizedRect dom = plan.frame.domain();
  const bool pad = plan.spec.background == Background::kIntegratedPadding;

  WarpedImage out{ImageBuffer(w, h, ch), Mask(w, h, false), plan};
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const ComplexValue u = px_to_complex(
          plan.frame, {static_cast<double>(x), static_cast<double>(y)});
      const auto z = try_inverse_map(plan.params, plan.canvas_to_content(u));
      const bool inside = z && dom.contains(*z);
      if (!inside && !pad) continue;
      const ComplexValue at = inside ? *z : dom.clamp(z ? *z : u);
      const PixelValue v = sample(src, plan.frame, at, plan.spec.interpolation);
      std::copy(v.begin(), v.begin() + ch, out.image.pixel(x, y));
      out.mask.set(x, y, true);
    }
  }
  return out;
}

WarpedImage warp_image(ImageView src, const MobiusParams& p,
                       const WarpSpec& spec) {
  return warp_image(src, make_plan(p, src.width(), src.height(), spec));
}

}  // namespace mpd
