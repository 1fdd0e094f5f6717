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

#include "mpd/mobius.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace mpd {

ComplexValue::ComplexValue(double re, double im) : re_(re), im_(im) {
  if (!std::isfinite(re) || !std::isfinite(im)) {
    throw Error(ErrorCode::kNonFinite, "complex component is NaN or Inf");
  }
}

double ComplexValue::abs() const noexcept { return std::hypot(re_, im_); }

bool MobiusParams::is_identity() const noexcept {
  const ComplexValue one(1.0, 0.0), zero(0.0, 0.0);
  return a_ == one && b_ == zero && c_ == zero && d_ == one;
}

MobiusParams MobiusParams::identity() {
  return validate_params({1.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {1.0, 0.0});
}

MobiusParams validate_params(ComplexValue a, ComplexValue b, ComplexValue c,
                             ComplexValue d) {
  const ComplexValue det = a * d - b * c;
  if (!(det.abs() >= kDetEps)) {
    throw Error(ErrorCode::kDegenerateParams,
                "|ad - bc| = " + std::to_string(det.abs()));
  }
  MobiusParams p;
  p.a_ = a;
  p.b_ = b;
  p.c_ = c;
  p.d_ = d;
  p.det_ = det;
  return p;
}

std::optional<ComplexValue> try_forward_map(const MobiusParams& p,
                                            ComplexValue z) noexcept {
  const ComplexValue den = p.c() * z + p.d();
  if (den.abs() <= kPoleEps) return std::nullopt;
  return (p.a() * z + p.b()) / den;
}

std::optional<ComplexValue> try_inverse_map(const MobiusParams& p,
                                            ComplexValue w) noexcept {
  const ComplexValue den = p.a() - p.c() * w;
  if (den.abs() <= kPoleEps) return std::nullopt;
  return (p.d() * w - p.b()) / den;
}

ComplexValue forward_map(const MobiusParams& p, ComplexValue z) {
  if (auto w = try_forward_map(p, z)) return *w;
  throw Error(ErrorCode::kNearPole, "|cz + d| <= POLE_EPS");
}

ComplexValue inverse_map(const MobiusParams& p, ComplexValue w) {
  if (auto z = try_inverse_map(p, w)) return *z;
  throw Error(ErrorCode::kNearPole, "|a - cw| <= POLE_EPS");
}

ComplexValue derivative(const MobiusParams& p, ComplexValue z) {
  const ComplexValue den = p.c() * z + p.d();
  if (den.abs() <= kPoleEps) {
    throw Error(ErrorCode::kNearPole, "|cz + d| <= POLE_EPS");
  }
  return p.determinant() / (den * den);
}

ComplexValue NormalizedRect::clamp(ComplexValue z) const noexcept {
  return {std::clamp(z.re(), re_lo, re_hi), std::clamp(z.im(), im_lo, im_hi)};
}

CoordFrame::CoordFrame(int width, int height, FrameConvention convention)
    : width_(width), height_(height), convention_(convention) {
  if (width < 1 || height < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "frame must be at least 1x1, got " + std::to_string(width) +
                    "x" + std::to_string(height));
  }
}

NormalizedRect CoordFrame::domain() const noexcept {
  if (convention_ == FrameConvention::kUnitSquare) return {0.0, 1.0, 0.0, 1.0};
  return {-1.0, 1.0, -1.0, 1.0};
}

namespace {

// A single row or column collapses onto the low edge.
double span_of(int extent) noexcept {
  return extent > 1 ? static_cast<double>(extent - 1) : 1.0;
}

}  // namespace

ComplexValue px_to_complex(const CoordFrame& frame, PixelPoint xy) {
  const double sx = span_of(frame.width());
  const double sy = span_of(frame.height());
  if (frame.convention() == FrameConvention::kUnitSquare) {
    return {xy.x / sx, xy.y / sy};
  }
  return {2.0 * xy.x / sx - 1.0, 1.0 - 2.0 * xy.y / sy};
}

PixelPoint complex_to_px(const CoordFrame& frame, ComplexValue z) noexcept {
  const double sx = span_of(frame.width());
  const double sy = span_of(frame.height());
  if (frame.convention() == FrameConvention::kUnitSquare) {
    return {z.re() * sx, z.im() * sy};
  }
  return {(z.re() + 1.0) * 0.5 * sx, (1.0 - z.im()) * 0.5 * sy};
}

}  // namespace mpd
