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

#include "mpd/datasetgen.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cctype>
#include <exception>
#include <fstream>
#include <mutex>
#include <optional>
#include <set>
#include <thread>
#include <tuple>

#include "mpd/image_io.hpp"
#include "mpd/version.hpp"

namespace mpd {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr std::array<PdSubset, 8> kSubsets{{
    {"PD-L", Orientation::kLeft, Background::kBlack},
    {"PD-R", Orientation::kRight, Background::kBlack},
    {"PD-T", Orientation::kTop, Background::kBlack},
    {"PD-B", Orientation::kBottom, Background::kBlack},
    {"PD-LI", Orientation::kLeft, Background::kIntegratedPadding},
    {"PD-RI", Orientation::kRight, Background::kIntegratedPadding},
    {"PD-TI", Orientation::kTop, Background::kIntegratedPadding},
    {"PD-BI", Orientation::kBottom, Background::kIntegratedPadding},
}};

bool has_image_extension(const fs::path& p) {
  std::string ext = p.extension().string();
  for (char& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return ext == ".png" || ext == ".jpg" || ext == ".jpeg";
}

json complex_json(ComplexValue z) { return json::array({z.re(), z.im()}); }

ComplexValue complex_from(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw Error(ErrorCode::kMalformedRecord, "complex value must be [re, im]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

std::string_view interpolation_name(Interpolation i) {
  return i == Interpolation::kNearest ? "nearest" : "bilinear";
}

std::string_view frame_name(FrameConvention f) {
  return f == FrameConvention::kCentered ? "centered" : "unit-square";
}

struct ItemResult {
  std::vector<ManifestRecord> records;
  std::optional<ManifestFailure> failure;
};

ItemResult process_item(const GenOptions& opts, const std::string& relpath) {
  ItemResult result;
  ImageBuffer src;
  try {
    src = read_image(opts.input_dir / fs::path(relpath));
  } catch (const Error& e) {
    result.failure = ManifestFailure{relpath, e.what()};
    return result;
  }
  const std::uint64_t item_seed = derive_item_seed(opts.seed, relpath);
  for (const PdSubset& subset : kSubsets) {
    const WarpSpec spec{subset.background, opts.interpolation, Fit::kNone,
                        opts.frame};
    const MobiusParams params = preset_params(subset.orientation, opts.intensity);
    const WarpedImage warped = warp_image(src.view(), params, spec);
    const std::string out_rel = subset_output_path(subset.name, relpath);
    const fs::path out_path = opts.output_dir / fs::path(out_rel);
    fs::create_directories(out_path.parent_path());
    write_png(out_path, warped.image);
    result.records.push_back({relpath, std::string(subset.name), out_rel,
                              item_seed, params, pixel_digest(warped.image)});
  }
  return result;
}

}  // namespace

std::span<const PdSubset> pd_subsets() noexcept { return kSubsets; }

std::uint64_t derive_item_seed(std::uint64_t global_seed,
                               std::string_view relpath) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : relpath) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return mix64(mix64(global_seed ^ 0x6a09e667f3bcc909ULL) ^ h);
}

std::string subset_output_path(std::string_view subset,
                               std::string_view relpath) {
  fs::path rel{std::string(relpath)};
  rel.replace_extension(".png");
  return (fs::path(std::string(subset)) / rel).generic_string();
}

std::vector<std::string> scan_inputs(const fs::path& dir) {
  if (!fs::is_directory(dir)) {
    throw Error(ErrorCode::kIo, "not a directory: " + dir.string());
  }
  std::vector<std::string> out;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (entry.is_regular_file() && has_image_extension(entry.path())) {
      out.push_back(fs::relative(entry.path(), dir).generic_string());
    }
  }
  return out;
}

Manifest generate_pd_from(const GenOptions& opts,
                          std::vector<std::string> relpaths) {
  if (relpaths.empty()) {
    throw Error(ErrorCode::kEmptyInput,
                "no PNG/JPEG images under " + opts.input_dir.string());
  }
  if (!(opts.intensity > 0.0)) {
    throw Error(ErrorCode::kInvalidIntensity, "intensity must be > 0");
  }
  std::sort(relpaths.begin(), relpaths.end());
  relpaths.erase(std::unique(relpaths.begin(), relpaths.end()), relpaths.end());
  {
    std::set<std::string> outputs;
    for (const auto& rel : relpaths) {
      if (!outputs.insert(subset_output_path("", rel)).second) {
        throw Error(ErrorCode::kInvalidArgument,
                    "two inputs map to the same output: " + rel);
      }
    }
  }
  fs::create_directories(opts.output_dir);

  std::vector<ItemResult> results(relpaths.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto worker = [&] {
    for (std::size_t i = next++; i < relpaths.size(); i = next++) {
      try {
        results[i] = process_item(opts, relpaths[i]);
      } catch (...) {
        std::lock_guard lock(error_mu);
        if (!error) error = std::current_exception();
      }
    }
  };
  const int n_threads =
      std::clamp(opts.threads, 1, static_cast<int>(relpaths.size()));
  {
    std::vector<std::jthread> pool;
    for (int t = 1; t < n_threads; ++t) pool.emplace_back(worker);
    worker();
  }
  if (error) std::rethrow_exception(error);

  Manifest m;
  m.tool_version = kToolVersion;
  m.global_seed = opts.seed;
  m.intensity = opts.intensity;
  m.frame_policy = WarpSpec{Background::kBlack, opts.interpolation, Fit::kNone,
                            opts.frame};
  for (auto& r : results) {
    for (auto& rec : r.records) m.records.push_back(std::move(rec));
    if (r.failure) m.failures.push_back(std::move(*r.failure));
  }
  std::sort(m.records.begin(), m.records.end(),
            [](const ManifestRecord& l, const ManifestRecord& r) {
              return std::tie(l.relpath, l.subset) < std::tie(r.relpath, r.subset);
            });

  std::ofstream out(opts.output_dir / "manifest.json", std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write manifest");
  out << manifest_text(m);
  return m;
}

Manifest generate_pd(const GenOptions& opts) {
  return generate_pd_from(opts, scan_inputs(opts.input_dir));
}

json manifest_to_json(const Manifest& m) {
  json records = json::array();
  for (const auto& r : m.records) {
    records.push_back({
        {"relpath", r.relpath},
        {"subset", r.subset},
        {"output", r.output},
        {"item_seed", r.item_seed},
        {"params",
         {{"a", complex_json(r.params.a())},
          {"b", complex_json(r.params.b())},
          {"c", complex_json(r.params.c())},
          {"d", complex_json(r.params.d())}}},
        {"digest", r.digest},
    });
  }
  json failures = json::array();
  for (const auto& f : m.failures) {
    failures.push_back({{"relpath", f.relpath}, {"error", f.error}});
  }
  return {
      {"tool_version", m.tool_version},
      {"global_seed", m.global_seed},
      {"intensity", m.intensity},
      {"frame_policy",
       {{"convention", frame_name(m.frame_policy.frame)},
        {"interpolation", interpolation_name(m.frame_policy.interpolation)},
        {"fit", "none"}}},
      {"records", records},
      {"failures", failures},
  };
}

std::string manifest_text(const Manifest& m) {
  return manifest_to_json(m).dump(2) + "\n";
}

Manifest manifest_from_json(const json& j) {
  try {
    Manifest m;
    m.tool_version = j.at("tool_version").get<std::string>();
    m.global_seed = j.at("global_seed").get<std::uint64_t>();
    m.intensity = j.at("intensity").get<double>();
    const json& fp = j.at("frame_policy");
    m.frame_policy.frame = fp.at("convention") == "centered"
                               ? FrameConvention::kCentered
                               : FrameConvention::kUnitSquare;
    m.frame_policy.interpolation = fp.at("interpolation") == "nearest"
                                       ? Interpolation::kNearest
                                       : Interpolation::kBilinear;
    for (const json& r : j.at("records")) {
      const json& p = r.at("params");
      m.records.push_back({
          r.at("relpath").get<std::string>(),
          r.at("subset").get<std::string>(),
          r.at("output").get<std::string>(),
          r.at("item_seed").get<std::uint64_t>(),
          validate_params(complex_from(p.at("a")), complex_from(p.at("b")),
                          complex_from(p.at("c")), complex_from(p.at("d"))),
          r.at("digest").get<std::string>(),
      });
    }
    for (const json& f : j.at("failures")) {
      m.failures.push_back(
          {f.at("relpath").get<std::string>(), f.at("error").get<std::string>()});
    }
    return m;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kMalformedRecord, e.what());
  }
}

}  // namespace mpd
