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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "mpd/autocrowd.hpp"
#include "test_support.hpp"

using namespace mpd;
using namespace mpd::testing;

namespace {

/// Scene with a grid of annotated "heads" 12 px apart.
struct Scene {
  ImageBuffer image;
  PointSet heads;
};

Scene crowd_scene(int n) {
  Scene s{noise_image(n, n, 3, 77), {{}, CoordFrame(n, n)}};
  for (int y = 20; y < n - 20; y += 12)
    for (int x = 20; x < n - 20; x += 12) s.heads.points.push_back({double(x), double(y)});
  return s;
}

std::size_t background_px(const Mask& m) {
  std::size_t n = 0;
  for (int y = 0; y < m.height(); ++y)
    for (int x = 0; x < m.width(); ++x) n += m.at(x, y) == 0;
  return n;
}

}  // namespace

TEST_CASE("head patch radius rules") {
  const ImageBuffer img = noise_image(200, 200, 3, 1);
  const CoordFrame f(200, 200);

  const auto single = extract_head_patches(img.view(), {{{100, 100}}, f}, 3);
  REQUIRE(single.size() == 1);
  CHECK(single[0].radius == kFallbackHeadRadius);
  CHECK(single[0].radius == 16);
  CHECK(single[0].pixels.width() == 33);
  CHECK(single[0].pixels.height() == 33);

  const auto pair = extract_head_patches(img.view(), {{{60, 100}, {100, 100}}, f}, 1);
  REQUIRE(pair.size() == 2);
  CHECK(pair[0].radius == 20);
  CHECK(pair[1].radius == 20);
  // Crop contents are the source pixels around the centre.
  CHECK(std::equal(pair[0].pixels.pixel(0, 0), pair[0].pixels.pixel(0, 0) + 3,
                   img.pixel(40, 80)));
  CHECK(std::equal(pair[0].pixels.pixel(40, 40), pair[0].pixels.pixel(40, 40) + 3,
                   img.pixel(80, 120)));

  // 1 px from the border with radius 20: discarded; its partner survives.
  const auto border = extract_head_patches(img.view(), {{{1, 100}, {41, 100}}, f}, 1);
  REQUIRE(border.size() == 1);
  CHECK(border[0].center.x == 41);

  // Neighbour distances clamp to [2, 64].
  const auto close = extract_head_patches(img.view(), {{{100, 100}, {101, 100}}, f}, 1);
  CHECK(close[0].radius == kMinHeadRadius);
  const auto far = extract_head_patches(
      noise_image(400, 400, 1, 2).view(), {{{70, 200}, {330, 200}}, CoordFrame(400, 400)}, 1);
  REQUIRE(far.size() == 2);
  CHECK(far[0].radius == kMaxHeadRadius);

  // k larger than the neighbour count averages all neighbours: (40 + 80) / 4 = 30.
  const auto three =
      extract_head_patches(img.view(), {{{50, 100}, {90, 100}, {130, 100}}, f}, 5);
  CHECK(three[0].radius == 30);
  CHECK(three[1].radius == 20);
}

TEST_CASE("extraction errors") {
  const ImageBuffer img = noise_image(50, 50, 3, 1);
  try {
    extract_head_patches(img.view(), {{}, CoordFrame(50, 50)}, 1);
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kEmptyAnnotations);
  }
  CHECK_THROWS_AS(extract_head_patches(img.view(), {{{25, 25}}, CoordFrame(50, 50)}, 0), Error);
}

TEST_CASE("no background or zero density leaves the image unchanged") {
  const Scene s = crowd_scene(120);
  const auto patches = extract_head_patches(s.image.view(), s.heads, 3);
  REQUIRE_FALSE(patches.empty());
  const WarpedImage id = warp_image(s.image.view(), MobiusParams::identity(), {});
  const CrowdComposite a = compose_autocrowd(id, patches, 5.0, SplitMix64(1));
  CHECK(a.image == s.image);
  CHECK(a.added.points.empty());
  CHECK_FALSE(a.had_background);

  const WarpedImage left = warp_image(s.image.view(), preset_params(Orientation::kLeft, 0.3), {});
  const CrowdComposite b = compose_autocrowd(left, patches, 0.0, SplitMix64(1));
  CHECK(b.image == left.image);
  CHECK(b.added.points.empty());
  CHECK(b.had_background);
}

TEST_CASE("placement count and positions at density 2 per kpx") {
  const Scene s = crowd_scene(224);
  const auto patches = extract_head_patches(s.image.view(), s.heads, 3);
  const WarpedImage w = warp_image(s.image.view(), preset_params(Orientation::kLeft, 0.3), {});
  const std::size_t bg = background_px(w.mask);
  REQUIRE(bg > 0);
  const CrowdComposite out = compose_autocrowd(w, patches, 2.0, SplitMix64(3));
  const auto expect = static_cast<std::size_t>(std::llround(2.0 * double(bg) / 1000.0));
  CHECK(out.requested == expect);
  CHECK(out.added.points.size() == expect);
  for (const PixelPoint& p : out.added.points) CHECK(w.mask.at(int(p.x), int(p.y)) == 0);
}

TEST_CASE("content preservation and label soundness") {
  const Scene s = crowd_scene(160);
  const auto patches = extract_head_patches(s.image.view(), s.heads, 2);
  SplitMix64 rng(4);
  for (Orientation o : {Orientation::kLeft, Orientation::kRight, Orientation::kTop,
                        Orientation::kBottom, Orientation::kLeftTop}) {
    const WarpedImage w = warp_image(s.image.view(), preset_params(o, 0.4), {});
    const CrowdComposite out = compose_autocrowd(w, patches, 4.0, rng.split(int(o)));
    REQUIRE_FALSE(out.added.points.empty());
    for (int y = 0; y < 160; ++y)
      for (int x = 0; x < 160; ++x)
        if (w.mask.at(x, y)) {
          CHECK(std::equal(w.image.pixel(x, y), w.image.pixel(x, y) + 3, out.image.pixel(x, y)));
        }
    // Every added point is the centre of a pasted crop that avoids content.
    const int r = patches[0].radius;
    for (const HeadPatch& p : patches) REQUIRE(p.radius == r);
    for (const PixelPoint& c : out.added.points) {
      const int cx = int(c.x), cy = int(c.y);
      CHECK(c.x == cx);
      REQUIRE(cx - r >= 0);
      REQUIRE(cy + r < 160);
      bool matches_some_patch = false;
      for (int yy = -r; yy <= r; ++yy)
        for (int xx = -r; xx <= r; ++xx) CHECK(w.mask.at(cx + xx, cy + yy) == 0);
      for (const HeadPatch& p : patches) {
        bool same = true;
        for (int yy = -r; yy <= r && same; ++yy)
          for (int xx = -r; xx <= r && same; ++xx)
            same = std::equal(p.pixels.pixel(xx + r, yy + r), p.pixels.pixel(xx + r, yy + r) + 3,
                              out.image.pixel(cx + xx, cy + yy));
        matches_some_patch |= same;
      }
      // Later pastes may cover earlier ones, so only the last must be intact.
      if (&c == &out.added.points.back()) CHECK(matches_some_patch);
    }
  }
}

TEST_CASE("composition is deterministic in the stream state") {
  const Scene s = crowd_scene(128);
  const auto patches = extract_head_patches(s.image.view(), s.heads, 3);
  const WarpedImage w = warp_image(s.image.view(), preset_params(Orientation::kBottom, 0.35), {});
  const CrowdComposite a = compose_autocrowd(w, patches, 3.0, SplitMix64(42));
  const CrowdComposite b = compose_autocrowd(w, patches, 3.0, SplitMix64(42));
  const CrowdComposite c = compose_autocrowd(w, patches, 3.0, SplitMix64(43));
  CHECK(a.image == b.image);
  REQUIRE(a.added.points.size() == b.added.points.size());
  for (std::size_t i = 0; i < a.added.points.size(); ++i) {
    CHECK(a.added.points[i].x == b.added.points[i].x);
    CHECK(a.added.points[i].y == b.added.points[i].y);
  }
  CHECK_FALSE(a.image == c.image);
}

TEST_CASE("composition preconditions") {
  const Scene s = crowd_scene(100);
  const auto patches = extract_head_patches(s.image.view(), s.heads, 3);
  const WarpedImage pad = warp_image(s.image.view(), preset_params(Orientation::kLeft, 0.3),
                                     {Background::kIntegratedPadding});
  try {
    compose_autocrowd(pad, patches, 1.0, SplitMix64(0));
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInvalidBackground);
  }
  const WarpedImage black = warp_image(s.image.view(), preset_params(Orientation::kLeft, 0.3), {});
  try {
    compose_autocrowd(black, {}, 1.0, SplitMix64(0));
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kEmptyAnnotations);
  }
}

TEST_CASE("default density matches the source scene") {
  CHECK(head_density_per_kpx(50, 25000) == doctest::Approx(2.0));
  CHECK(head_density_per_kpx(0, 25000) == 0.0);
  CHECK(head_density_per_kpx(5, 0) == 0.0);
}
