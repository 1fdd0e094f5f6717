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

// Shared fixtures and independent oracles for the test binaries. Nothing
// here calls into the library's complex arithmetic.

#ifndef MPD_TESTS_TEST_SUPPORT_HPP_
#define MPD_TESTS_TEST_SUPPORT_HPP_

#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <random>
#include <string>
#include <vector>

#include "mpd/benchkit.hpp"
#include "mpd/image.hpp"
#include "mpd/mobius.hpp"

namespace mpd::testing {

using Cx = std::complex<double>;

inline Cx to_std(ComplexValue z) { return {z.re(), z.im()}; }

struct StdParams {
  Cx a{1.0, 0.0}, b{0.0, 0.0}, c{0.0, 0.0}, d{1.0, 0.0};
};

inline StdParams to_std(const MobiusParams& p) {
  return {to_std(p.a()), to_std(p.b()), to_std(p.c()), to_std(p.d())};
}

inline Cx oracle_forward(const StdParams& p, Cx z) {
  return (p.a * z + p.b) / (p.c * z + p.d);
}

inline Cx oracle_inverse(const StdParams& p, Cx w) {
  return (p.d * w - p.b) / (p.a - p.c * w);
}

/// Pixel -> normalized coordinate, written out independently of the library.
inline Cx oracle_px(int w, int h, bool centered, double x, double y) {
  const double sx = w > 1 ? w - 1 : 1, sy = h > 1 ? h - 1 : 1;
  if (!centered) return {x / sx, y / sy};
  return {2.0 * x / sx - 1.0, 1.0 - 2.0 * y / sy};
}

/// Inverse map in explicit real arithmetic (conjugate multiplication), used
/// for pixel-exact indicator checks.
inline bool oracle_in_domain(const StdParams& p, Cx w, bool centered) {
  const double nr = p.d.real() * w.real() - p.d.imag() * w.imag() - p.b.real();
  const double ni = p.d.real() * w.imag() + p.d.imag() * w.real() - p.b.imag();
  const double dr = p.a.real() - (p.c.real() * w.real() - p.c.imag() * w.imag());
  const double di = p.a.imag() - (p.c.real() * w.imag() + p.c.imag() * w.real());
  const double den = dr * dr + di * di;
  if (std::sqrt(den) <= 1e-8) return false;
  const double zr = (nr * dr + ni * di) / den;
  const double zi = (ni * dr - nr * di) / den;
  const double lo = centered ? -1.0 : 0.0;
  return zr >= lo && zr <= 1.0 && zi >= lo && zi <= 1.0;
}

inline ImageBuffer gradient_image(int w, int h) {
  ImageBuffer img(w, h, 3);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      std::uint8_t* p = img.pixel(x, y);
      p[0] = static_cast<std::uint8_t>(1 + (x * 254) / std::max(w - 1, 1));
      p[1] = static_cast<std::uint8_t>(1 + (y * 254) / std::max(h - 1, 1));
      p[2] = static_cast<std::uint8_t>(1 + ((x + y) * 127) / std::max(w + h - 2, 1));
    }
  return img;
}

inline ImageBuffer checker_image(int w, int h, int cell = 8) {
  ImageBuffer img(w, h, 1);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      *img.pixel(x, y) = ((x / cell + y / cell) % 2) ? 230 : 20;
  return img;
}

/// Values in [1, 255] so no pixel equals the black background.
inline ImageBuffer noise_image(int w, int h, int channels, std::uint32_t seed) {
  std::mt19937 gen(seed);
  std::uniform_int_distribution<int> dist(1, 255);
  ImageBuffer img(w, h, channels);
  for (auto& v : img.data()) v = static_cast<std::uint8_t>(dist(gen));
  return img;
}

inline ImageBuffer uniform_image(int w, int h, std::uint8_t value) {
  ImageBuffer img(w, h, 1);
  for (auto& v : img.data()) v = value;
  return img;
}

/// Unique scratch directory removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("mpd_" + tag + "_" + std::to_string(::getpid()) + "_" +
             std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

/// n records labelled by id; the first hit1 are right at rank 1, the next
/// (hit5 - hit1) at rank 3, the rest miss the top 5. Order is shuffled.
inline std::vector<PredictionRecord> synthetic_predictions(std::size_t n, std::size_t hit1,
                                                           std::size_t hit5,
                                                           std::uint32_t seed) {
  std::vector<PredictionRecord> out;
  for (std::size_t i = 0; i < n; ++i) {
    const std::string label = "c" + std::to_string(i % 1000);
    std::vector<std::string> topk{"x1", "x2", "x3", "x4", "x5", "x6"};
    if (i < hit1) topk[0] = label;
    else if (i < hit5) topk[2] = label;
    else topk[5] = label;
    out.push_back({"img" + std::to_string(i), label, topk});
  }
  std::shuffle(out.begin(), out.end(), std::mt19937(seed));
  return out;
}

inline void write_text(const std::filesystem::path& p, const std::string& text) {
  std::filesystem::create_directories(p.parent_path());
  std::ofstream(p, std::ios::binary) << text;
}

inline std::string read_text(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace mpd::testing

#endif  // MPD_TESTS_TEST_SUPPORT_HPP_
