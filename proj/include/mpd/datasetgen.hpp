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

#ifndef MPD_DATASETGEN_HPP_
#define MPD_DATASETGEN_HPP_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "mpd/mobius.hpp"
#include "mpd/presets.hpp"
#include "mpd/warp.hpp"

namespace mpd {

/// One benchmark subset: an edge orientation with a background variant.
struct PdSubset {
  std::string_view name;
  Orientation orientation;
  Background background;
};

/// PD-L, PD-R, PD-T, PD-B (black) then PD-LI, PD-RI, PD-TI, PD-BI.
std::span<const PdSubset> pd_subsets() noexcept;

/// Stable per-item seed: FNV-1a of the path, mixed with the global seed.
std::uint64_t derive_item_seed(std::uint64_t global_seed,
                               std::string_view relpath) noexcept;

struct GenOptions {
  std::filesystem::path input_dir;
  std::filesystem::path output_dir;
  double intensity = 0.3;
  std::uint64_t seed = 0;
  int threads = 1;
  Interpolation interpolation = Interpolation::kBilinear;
  FrameConvention frame = FrameConvention::kCentered;
};

struct ManifestRecord {
  std::string relpath;
  std::string subset;
  std::string output;  // relative to the output directory
  std::uint64_t item_seed = 0;
  MobiusParams params = MobiusParams::identity();
  std::string digest;
};

struct ManifestFailure {
  std::string relpath;
  std::string error;
};

struct Manifest {
  std::string tool_version;
  std::uint64_t global_seed = 0;
  double intensity = 0.0;
  WarpSpec frame_policy;  // background varies per subset and is not stored
  std::vector<ManifestRecord> records;     // sorted by (relpath, subset)
  std::vector<ManifestFailure> failures;   // sorted by relpath
};

nlohmann::json manifest_to_json(const Manifest& m);
/// Pretty-printed JSON; byte-identical for identical manifests.
std::string manifest_text(const Manifest& m);
/// Throws Error(kMalformedRecord) on schema violations.
Manifest manifest_from_json(const nlohmann::json& j);

/// Image files (.png/.jpg/.jpeg, any case) under dir, as '/'-separated
/// relative paths in directory-enumeration order.
std::vector<std::string> scan_inputs(const std::filesystem::path& dir);

/// Output location of relpath inside a subset tree: extension replaced by
/// .png.
std::string subset_output_path(std::string_view subset,
                               std::string_view relpath);

/// Scans opts.input_dir and generates all eight subsets plus
/// output_dir/manifest.json. Throws Error(kEmptyInput) when no image files
/// are found.
Manifest generate_pd(const GenOptions& opts);
/// Same, over an explicit list of relative paths in any order.
Manifest generate_pd_from(const GenOptions& opts,
                          std::vector<std::string> relpaths);

}  // namespace mpd

#endif  // MPD_DATASETGEN_HPP_
