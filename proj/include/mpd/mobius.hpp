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

#ifndef MPD_MOBIUS_HPP_
#define MPD_MOBIUS_HPP_

#include <optional>

#include "mpd/error.hpp"

namespace mpd {

/// Minimum |ad - bc| accepted by validate_params.
inline constexpr double kDetEps = 1e-8;
/// Denominators with magnitude at or below this are treated as the pole.
inline constexpr double kPoleEps = 1e-8;

/// Finite complex number. Arithmetic is spelled out by hand (no scaling
/// tricks) so that identity-like parameter sets reproduce inputs exactly.
class ComplexValue {
 public:
  ComplexValue() = default;
  /// Throws Error(kNonFinite) for NaN or infinite components.
  ComplexValue(double re, double im = 0.0);

  double re() const noexcept { return re_; }
  double im() const noexcept { return im_; }

  double norm_sq() const noexcept { return re_ * re_ + im_ * im_; }
  double abs() const noexcept;

  friend ComplexValue operator+(ComplexValue l, ComplexValue r) noexcept {
    return Raw(l.re_ + r.re_, l.im_ + r.im_);
  }
  friend ComplexValue operator-(ComplexValue l, ComplexValue r) noexcept {
    return Raw(l.re_ - r.re_, l.im_ - r.im_);
  }
  friend ComplexValue operator*(ComplexValue l, ComplexValue r) noexcept {
    return Raw(l.re_ * r.re_ - l.im_ * r.im_, l.re_ * r.im_ + l.im_ * r.re_);
  }
  /// Caller guarantees r is not zero.
  friend ComplexValue operator/(ComplexValue l, ComplexValue r) noexcept {
    const double den = r.norm_sq();
    return Raw((l.re_ * r.re_ + l.im_ * r.im_) / den,
               (l.im_ * r.re_ - l.re_ * r.im_) / den);
  }
  friend bool operator==(ComplexValue l, ComplexValue r) noexcept {
    return l.re_ == r.re_ && l.im_ == r.im_;
  }

 private:
  static ComplexValue Raw(double re, double im) noexcept {
    ComplexValue v;
    v.re_ = re;
    v.im_ = im;
    return v;
  }

  double re_ = 0.0;
  double im_ = 0.0;
};

/// Parameters of z -> (az + b) / (cz + d). Only obtainable through
/// validate_params, so every instance satisfies |ad - bc| >= kDetEps.
class MobiusParams {
 public:
  const ComplexValue& a() const noexcept { return a_; }
  const ComplexValue& b() const noexcept { return b_; }
  const ComplexValue& c() const noexcept { return c_; }
  const ComplexValue& d() const noexcept { return d_; }
  /// ad - bc as recorded at validation time.
  const ComplexValue& determinant() const noexcept { return det_; }

  bool is_identity() const noexcept;

  friend bool operator==(const MobiusParams&, const MobiusParams&) = default;

  static MobiusParams identity();

 private:
  friend MobiusParams validate_params(ComplexValue a, ComplexValue b,
                                      ComplexValue c, ComplexValue d);
  ComplexValue a_, b_, c_, d_, det_;
};

/// Throws Error(kDegenerateParams) when |ad - bc| < kDetEps.
MobiusParams validate_params(ComplexValue a, ComplexValue b, ComplexValue c,
                             ComplexValue d);

/// (az + b) / (cz + d). Throws Error(kNearPole) when |cz + d| <= kPoleEps.
ComplexValue forward_map(const MobiusParams& p, ComplexValue z);
/// (dw - b) / (a - cw). Throws Error(kNearPole) when |a - cw| <= kPoleEps.
ComplexValue inverse_map(const MobiusParams& p, ComplexValue w);
/// (ad - bc) / (cz + d)^2. Throws Error(kNearPole) like forward_map.
ComplexValue derivative(const MobiusParams& p, ComplexValue z);

// Non-throwing variants for per-pixel loops; nullopt means NearPole.
std::optional<ComplexValue> try_forward_map(const MobiusParams& p,
                                            ComplexValue z) noexcept;
std::optional<ComplexValue> try_inverse_map(const MobiusParams& p,
                                            ComplexValue w) noexcept;

/// How pixel coordinates are placed in the complex plane.
enum class FrameConvention {
  /// z = x/(W-1) + i*y/(H-1); origin top-left, im grows downward, domain
  /// [0,1]^2.
  kUnitSquare,
  /// z = (2x/(W-1) - 1) + i*(1 - 2y/(H-1)); origin at the image center, im
  /// grows upward, domain [-1,1]^2. Default for warping: the preset sign
  /// table (-c_real left, -c_imag top) compresses the named edge.
  kCentered,
};

/// Axis-aligned rectangle in normalized (complex) coordinates.
struct NormalizedRect {
  double re_lo = 0.0, re_hi = 0.0, im_lo = 0.0, im_hi = 0.0;

  bool contains(ComplexValue z) const noexcept {
    return z.re() >= re_lo && z.re() <= re_hi && z.im() >= im_lo &&
           z.im() <= im_hi;
  }
  ComplexValue clamp(ComplexValue z) const noexcept;
  double width() const noexcept { return re_hi - re_lo; }
  double height() const noexcept { return im_hi - im_lo; }

  friend bool operator==(const NormalizedRect&,
                         const NormalizedRect&) = default;
};

/// Continuous pixel coordinates; pixel centers sit on integers.
struct PixelPoint {
  double x = 0.0;
  double y = 0.0;
};

class CoordFrame {
 public:
  /// Throws Error(kInvalidArgument) unless width, height >= 1.
  CoordFrame(int width, int height,
             FrameConvention convention = FrameConvention::kCentered);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  FrameConvention convention() const noexcept { return convention_; }

  /// Image of the pixel grid [0, W-1] x [0, H-1].
  NormalizedRect domain() const noexcept;

  friend bool operator==(const CoordFrame&, const CoordFrame&) = default;

 private:
  int width_;
  int height_;
  FrameConvention convention_;
};

// Out-of-canvas coordinates are allowed in both directions.
ComplexValue px_to_complex(const CoordFrame& frame, PixelPoint xy);
PixelPoint complex_to_px(const CoordFrame& frame, ComplexValue z) noexcept;

}  // namespace mpd

#endif  // MPD_MOBIUS_HPP_
