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

#include "mpd/presets.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <utility>

namespace mpd {

namespace {

constexpr std::array<std::pair<Orientation, std::string_view>, 8> kNames{{
    {Orientation::kLeft, "left"},
    {Orientation::kRight, "right"},
    {Orientation::kTop, "top"},
    {Orientation::kBottom, "bottom"},
    {Orientation::kLeftTop, "left-top"},
    {Orientation::kLeftBottom, "left-bottom"},
    {Orientation::kRightTop, "right-top"},
    {Orientation::kRightBottom, "right-bottom"},
}};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

double parse_double(std::string_view key, std::string_view v) {
  // std::from_chars for double is missing from older libstdc++.
  std::string s(v);
  char* end = nullptr;
  const double d = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(d)) {
    throw Error(ErrorCode::kInvalidPolicy,
                std::string(key) + ": not a number '" + s + "'");
  }
  return d;
}

}  // namespace

std::string_view orientation_name(Orientation o) noexcept {
  for (const auto& [value, name] : kNames)
    if (value == o) return name;
  return "?";
}

std::optional<Orientation> parse_orientation(std::string_view name) {
  for (const auto& [value, n] : kNames)
    if (n == name) return value;
  return std::nullopt;
}

MobiusParams preset_params(Orientation o, double intensity) {
  if (!(intensity > 0.0) || !std::isfinite(intensity)) {
    throw Error(ErrorCode::kInvalidIntensity,
                "intensity must be > 0, got " + std::to_string(intensity));
  }
  double re = 0.0, im = 0.0;
  switch (o) {
    case Orientation::kLeft: re = -intensity; break;
    case Orientation::kRight: re = intensity; break;
    case Orientation::kTop: im = -intensity; break;
    case Orientation::kBottom: im = intensity; break;
    case Orientation::kLeftTop: re = -intensity; im = -kDiagonalImag; break;
    case Orientation::kLeftBottom: re = -intensity; im = kDiagonalImag; break;
    case Orientation::kRightTop: re = intensity; im = -kDiagonalImag; break;
    case Orientation::kRightBottom: re = intensity; im = kDiagonalImag; break;
  }
  return validate_params({1.0, 0.0}, {0.0, 0.0}, {re, im}, {1.0, 0.0});
}

MobiusParams affine_params(double scale, double rotation,
                           ComplexValue translate) {
  const ComplexValue a(scale * std::cos(rotation), scale * std::sin(rotation));
  return validate_params(a, translate, {0.0, 0.0}, {1.0, 0.0});
}

std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t SplitMix64::next() noexcept {
  state_ += 0x9E3779B97F4A7C15ULL;
  return mix64(state_);
}

double SplitMix64::uniform() noexcept {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

SplitMix64 SplitMix64::split(std::uint64_t key) const noexcept {
  return SplitMix64(mix64(state_ ^ mix64(key + 0x9E3779B97F4A7C15ULL)));
}

void AugmentPolicy::validate() const {
  if (!(probability >= 0.0 && probability <= 1.0)) {
    throw Error(ErrorCode::kInvalidPolicy, "probability must lie in [0, 1]");
  }
  if (!(intensity_lo > 0.0) || !(intensity_lo <= intensity_hi) ||
      !std::isfinite(intensity_hi)) {
    throw Error(ErrorCode::kInvalidPolicy,
                "intensity range must satisfy 0 < lo <= hi");
  }
  if (orientations.empty()) {
    throw Error(ErrorCode::kInvalidPolicy, "orientation set is empty");
  }
}

SampledParams sample_params(const AugmentPolicy& policy, SplitMix64 rng) {
  policy.validate();
  const double gate = rng.uniform();
  const double pick = rng.uniform();
  const double level = rng.uniform();

  SampledParams out;
  out.apply = gate < policy.probability;
  const std::size_t n = policy.orientations.size();
  const std::size_t idx =
      std::min(static_cast<std::size_t>(pick * static_cast<double>(n)), n - 1);
  out.orientation = policy.orientations[idx];
  out.intensity =
      policy.intensity_lo + level * (policy.intensity_hi - policy.intensity_lo);
  if (out.apply) out.params = preset_params(out.orientation, out.intensity);
  out.next = rng;
  return out;
}

std::string_view background_name(Background b) noexcept {
  return b == Background::kBlack ? "black" : "padding";
}

std::optional<Background> parse_background(std::string_view name) {
  if (name == "black") return Background::kBlack;
  if (name == "padding" || name == "integrated") {
    return Background::kIntegratedPadding;
  }
  return std::nullopt;
}

AugmentPolicy parse_policy(std::string_view text) {
  AugmentPolicy policy;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (const std::size_t hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::kInvalidPolicy,
                  "line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key == "probability") {
      policy.probability = parse_double(key, value);
    } else if (key == "intensity_lo") {
      policy.intensity_lo = parse_double(key, value);
    } else if (key == "intensity_hi") {
      policy.intensity_hi = parse_double(key, value);
    } else if (key == "orientations") {
      policy.orientations.clear();
      std::string_view rest = value;
      while (!rest.empty()) {
        const std::size_t comma = rest.find(',');
        const std::string_view item = trim(rest.substr(0, comma));
        rest = comma == std::string_view::npos ? std::string_view{}
                                               : rest.substr(comma + 1);
        if (item.empty()) continue;
        const auto o = parse_orientation(item);
        if (!o) {
          throw Error(ErrorCode::kInvalidPolicy,
                      "unknown orientation '" + std::string(item) + "'");
        }
        policy.orientations.push_back(*o);
      }
    } else if (key == "background") {
      const auto b = parse_background(value);
      if (!b) {
        throw Error(ErrorCode::kInvalidPolicy,
                    "unknown background '" + std::string(value) + "'");
      }
      policy.background = *b;
    } else if (key == "seed") {
      std::uint64_t seed = 0;
      const auto [ptr, ec] =
          std::from_chars(value.data(), value.data() + value.size(), seed);
      if (ec != std::errc() || ptr != value.data() + value.size()) {
        throw Error(ErrorCode::kInvalidPolicy,
                    "seed: not an unsigned integer '" + std::string(value) + "'");
      }
      policy.seed = seed;
    } else {
      throw Error(ErrorCode::kInvalidPolicy,
                  "unknown key '" + std::string(key) + "'");
    }
  }
  policy.validate();
  return policy;
}

std::string serialize_policy(const AugmentPolicy& policy) {
  std::ostringstream os;
  os.precision(17);
  os << "probability = " << policy.probability << '\n'
     << "intensity_lo = " << policy.intensity_lo << '\n'
     << "intensity_hi = " << policy.intensity_hi << '\n'
     << "orientations = ";
  for (std::size_t i = 0; i < policy.orientations.size(); ++i) {
    os << (i ? "," : "") << orientation_name(policy.orientations[i]);
  }
  os << '\n'
     << "background = " << background_name(policy.background) << '\n'
     << "seed = " << policy.seed << '\n';
  return os.str();
}

}  // namespace mpd
