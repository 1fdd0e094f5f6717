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

#ifndef MPD_PRESETS_HPP_
#define MPD_PRESETS_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mpd/mobius.hpp"
#include "mpd/warp.hpp"

namespace mpd {

enum class Orientation {
  kLeft,
  kRight,
  kTop,
  kBottom,
  kLeftTop,
  kLeftBottom,
  kRightTop,
  kRightBottom,
};

/// Fixed imaginary component used by the diagonal views.
inline constexpr double kDiagonalImag = 0.2;

std::string_view orientation_name(Orientation o) noexcept;
/// Accepts the names produced by orientation_name ("left", "right-top", ...).
std::optional<Orientation> parse_orientation(std::string_view name);

/// a = d = 1, b = 0 and c chosen by the orientation table:
///   left (-i, 0), right (+i, 0), top (0, -i), bottom (0, +i),
///   left-top (-i, -0.2), left-bottom (-i, +0.2),
///   right-top (+i, -0.2), right-bottom (+i, +0.2).
/// Throws Error(kInvalidIntensity) unless intensity > 0.
MobiusParams preset_params(Orientation o, double intensity);

/// c = 0, a = scale * e^{i*rotation}, b = translate, d = 1: content is scaled
/// and rotated about the frame origin, then shifted by translate.
/// Throws Error(kDegenerateParams) for scale == 0.
MobiusParams affine_params(double scale, double rotation,
                           ComplexValue translate);

/// SplitMix64. Value type: copying the generator forks the stream.
class SplitMix64 {
 public:
  constexpr explicit SplitMix64(std::uint64_t state = 0) noexcept
      : state_(state) {}

  std::uint64_t next() noexcept;
  /// Uniform in [0, 1) from the top 53 bits.
  double uniform() noexcept;

  std::uint64_t state() const noexcept { return state_; }

  /// Independent stream keyed by `key`, derived without advancing this one.
  SplitMix64 split(std::uint64_t key) const noexcept;

  friend bool operator==(const SplitMix64&, const SplitMix64&) = default;

 private:
  std::uint64_t state_;
};

/// One SplitMix64 output step applied to x.
std::uint64_t mix64(std::uint64_t x) noexcept;

struct AugmentPolicy {
  double probability = 0.5;
  double intensity_lo = 0.2;
  double intensity_hi = 0.3;
  std::vector<Orientation> orientations{Orientation::kLeft, Orientation::kRight,
                                        Orientation::kTop,
                                        Orientation::kBottom};
  Background background = Background::kBlack;
  std::uint64_t seed = 0;

  /// Throws Error(kInvalidPolicy) describing the first violated invariant.
  void validate() const;

  friend bool operator==(const AugmentPolicy&, const AugmentPolicy&) = default;
};

struct SampledParams {
  bool apply = false;
  /// Identity when apply is false.
  MobiusParams params = MobiusParams::identity();
  Orientation orientation = Orientation::kLeft;
  double intensity = 0.0;
  SplitMix64 next;
};

/// Always consumes exactly three draws (gate, orientation, intensity), so
/// the returned stream position does not depend on the gate outcome.
SampledParams sample_params(const AugmentPolicy& policy, SplitMix64 rng);

/// key = value lines; '#' starts a comment. Keys: probability, intensity_lo,
/// intensity_hi, orientations (comma list), background (black|padding),
/// seed. Missing keys keep their defaults. Throws Error(kInvalidPolicy).
AugmentPolicy parse_policy(std::string_view text);
std::string serialize_policy(const AugmentPolicy& policy);

std::string_view background_name(Background b) noexcept;
std::optional<Background> parse_background(std::string_view name);

}  // namespace mpd

#endif  // MPD_PRESETS_HPP_
