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
#include <limits>
#include <random>

#include "mpd/mobius.hpp"
#include "test_support.hpp"

using namespace mpd;
using mpd::testing::Cx;

namespace {

MobiusParams with_c(double re, double im) {
  return validate_params({1, 0}, {0, 0}, {re, im}, {1, 0});
}

/// Random valid params with |det| >= 0.1.
MobiusParams random_params(std::mt19937_64& gen) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (;;) {
    const ComplexValue a(u(gen) + 1.0, u(gen)), b(u(gen), u(gen)),
        c(u(gen), u(gen)), d(u(gen) + 1.0, u(gen));
    if ((a * d - b * c).abs() >= 0.1) return validate_params(a, b, c, d);
  }
}

}  // namespace

TEST_CASE("ComplexValue rejects non-finite components") {
  CHECK_THROWS_AS(ComplexValue(std::numeric_limits<double>::quiet_NaN(), 0), Error);
  CHECK_THROWS_AS(ComplexValue(0, std::numeric_limits<double>::infinity()), Error);
}

TEST_CASE("validate_params") {
  const MobiusParams id = validate_params({1, 0}, {0, 0}, {0, 0}, {1, 0});
  CHECK(id.determinant() == ComplexValue(1, 0));
  CHECK(id.is_identity());

  try {
    validate_params({1, 0}, {2, 0}, {0.5, 0}, {1, 0});
    FAIL("expected DegenerateParams");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kDegenerateParams);
    CHECK(std::string(e.what()).rfind("DegenerateParams", 0) == 0);
  }

  const MobiusParams p = with_c(0.2, 0.3);
  CHECK(p.determinant() == ComplexValue(1, 0));
}

TEST_CASE("forward_map examples") {
  const ComplexValue z(0.3, 0.7);
  CHECK(forward_map(MobiusParams::identity(), z) == z);

  // Oracle: 1 / 1.2.
  const ComplexValue w1 = forward_map(with_c(0.2, 0), {1, 0});
  CHECK(w1.re() == doctest::Approx(0.8333333333333334).epsilon(1e-15));
  CHECK(w1.im() == 0.0);

  // Oracle: (0.5+0.5i)(1.1-0.1i) / 1.22 = (0.6 + 0.5i) / 1.22.
  const ComplexValue w2 = forward_map(with_c(0.2, 0), {0.5, 0.5});
  CHECK(w2.re() == doctest::Approx(0.4918032786885246).epsilon(1e-14));
  CHECK(w2.im() == doctest::Approx(0.4098360655737705).epsilon(1e-14));
  const Cx o = mpd::testing::oracle_forward(mpd::testing::to_std(with_c(0.2, 0)), {0.5, 0.5});
  CHECK(std::abs(o - Cx(w2.re(), w2.im())) < 1e-15);
}

TEST_CASE("forward_map near the pole") {
  // Pole of z / (0.5 z + 1) sits at z = -2.
  try {
    forward_map(with_c(0.5, 0), {-2, 0});
    FAIL("expected NearPole");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNearPole);
  }
  CHECK_FALSE(try_forward_map(with_c(0.5, 0), {-2, 0}).has_value());
  CHECK_THROWS_AS(derivative(with_c(0.5, 0), {-2, 0}), Error);
}

TEST_CASE("inverse_map examples") {
  const ComplexValue w(0.2, 0.9);
  CHECK(inverse_map(MobiusParams::identity(), w) == w);

  // Oracle: 0.833333 / (1 - 0.2 * 0.833333) = 1.
  const ComplexValue z = inverse_map(with_c(0.2, 0), {1.0 / 1.2, 0});
  CHECK(z.re() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(z.im() == 0.0);

  // a - cw vanishes at w = a/c = 5.
  CHECK_THROWS_AS(inverse_map(with_c(0.2, 0), {5, 0}), Error);
}

TEST_CASE("derivative examples") {
  CHECK(derivative(MobiusParams::identity(), {0.4, -0.7}) == ComplexValue(1, 0));
  CHECK(derivative(with_c(0.2, 0), {0, 0}) == ComplexValue(1, 0));
  const ComplexValue d1 = derivative(with_c(0.2, 0), {1, 0});
  CHECK(d1.re() == doctest::Approx(1.0 / 1.44).epsilon(1e-15));
  CHECK(d1.re() == doctest::Approx(0.6944444444444444).epsilon(1e-15));
}

TEST_CASE("px_to_complex / complex_to_px in the unit-square frame") {
  const CoordFrame f(224, 224, FrameConvention::kUnitSquare);
  CHECK(px_to_complex(f, {0, 0}) == ComplexValue(0, 0));
  CHECK(px_to_complex(f, {223, 223}) == ComplexValue(1, 1));
  const ComplexValue z = px_to_complex(f, {111.5, 55.75});
  CHECK(z.re() == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(z.im() == doctest::Approx(0.25).epsilon(1e-15));

  const CoordFrame g(40, 17, FrameConvention::kUnitSquare);
  CHECK(px_to_complex(g, {39, 16}) == ComplexValue(1, 1));
  const PixelPoint back = complex_to_px(g, px_to_complex(g, {12.25, 3.5}));
  CHECK(back.x == doctest::Approx(12.25).epsilon(1e-14));
  CHECK(back.y == doctest::Approx(3.5).epsilon(1e-14));
  // Out-of-canvas probing is allowed.
  CHECK(px_to_complex(g, {-39, 32}).re() == doctest::Approx(-1.0));
}

TEST_CASE("centered frame puts the origin mid-canvas with im upward") {
  const CoordFrame f(5, 3);
  CHECK(f.convention() == FrameConvention::kCentered);
  CHECK(px_to_complex(f, {0, 0}) == ComplexValue(-1, 1));
  CHECK(px_to_complex(f, {4, 2}) == ComplexValue(1, -1));
  CHECK(px_to_complex(f, {2, 1}) == ComplexValue(0, 0));
  const PixelPoint p = complex_to_px(f, {0.5, -0.5});
  CHECK(p.x == doctest::Approx(3.0));
  CHECK(p.y == doctest::Approx(1.5));
}

TEST_CASE("degenerate frames") {
  CHECK_THROWS_AS(CoordFrame(0, 4), Error);
  const CoordFrame line(1, 1, FrameConvention::kUnitSquare);
  CHECK(px_to_complex(line, {0, 0}) == ComplexValue(0, 0));
}

TEST_CASE("round trip over random params") {
  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  int checked = 0;
  while (checked < 10000) {
    const MobiusParams p = random_params(gen);
    const ComplexValue z(u(gen), u(gen));
    if ((p.c() * z + p.d()).abs() <= 0.1) continue;
    const ComplexValue back = inverse_map(p, forward_map(p, z));
    REQUIRE((back - z).abs() < 1e-9);
    ++checked;
  }
}

TEST_CASE("non-linearity witness exists whenever c != 0") {
  std::mt19937_64 gen(2);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const MobiusParams p = with_c(0.05 + 0.45 * std::abs(u(gen)), u(gen) * 0.5);
    bool found = false;
    for (int i = 0; i < 1000 && !found; ++i) {
      const ComplexValue z1(u(gen), u(gen)), z2(u(gen), u(gen));
      const auto s = try_forward_map(p, z1 + z2);
      const auto f1 = try_forward_map(p, z1);
      const auto f2 = try_forward_map(p, z2);
      if (s && f1 && f2) found = (*s - (*f1 + *f2)).abs() > 1e-3;
    }
    CHECK(found);
  }
}

TEST_CASE("affine reduction when c = 0") {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 1000; ++i) {
    const Cx a(u(gen), u(gen)), b(u(gen), u(gen)), d(u(gen) + 3.0, u(gen));
    if (std::abs(a * d) < 0.1) continue;
    const MobiusParams p = validate_params({a.real(), a.imag()}, {b.real(), b.imag()},
                                           {0, 0}, {d.real(), d.imag()});
    const Cx z(u(gen), u(gen));
    const Cx expect = (a * z + b) / d;
    const ComplexValue got = forward_map(p, {z.real(), z.imag()});
    CHECK(std::abs(Cx(got.re(), got.im()) - expect) < 1e-12);
  }
}

TEST_CASE("derivative matches central finite differences") {
  std::mt19937_64 gen(4);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double h = 1e-6;
  int checked = 0;
  while (checked < 1000) {
    const MobiusParams p = random_params(gen);
    const ComplexValue z(u(gen), u(gen));
    if ((p.c() * z + p.d()).abs() < 0.3) continue;
    const ComplexValue fd =
        (forward_map(p, z + ComplexValue(h, 0)) - forward_map(p, z - ComplexValue(h, 0))) /
        ComplexValue(2 * h, 0);
    CHECK((derivative(p, z) - fd).abs() < 1e-6);
    ++checked;
  }
}
