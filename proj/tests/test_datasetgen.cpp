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

#include <algorithm>
#include <random>
#include <unordered_set>

#include "mpd/datasetgen.hpp"
#include "mpd/image_io.hpp"
#include "mpd/version.hpp"
#include "test_support.hpp"

using namespace mpd;
using namespace mpd::testing;
namespace fs = std::filesystem;

namespace {

void put(const fs::path& p, const ImageBuffer& img) {
  fs::create_directories(p.parent_path());
  write_image(p, img);
}

void make_corpus(const fs::path& dir) {
  put(dir / "cat" / "a.png", noise_image(48, 40, 3, 1));
  put(dir / "dog" / "b.jpg", gradient_image(56, 44));
}

std::size_t count_files(const fs::path& dir, const std::string& ext) {
  std::size_t n = 0;
  for (const auto& e : fs::recursive_directory_iterator(dir))
    n += e.is_regular_file() && e.path().extension() == ext;
  return n;
}

}  // namespace

TEST_CASE("subset table") {
  const auto subsets = pd_subsets();
  REQUIRE(subsets.size() == 8);
  const char* names[] = {"PD-L", "PD-R", "PD-T", "PD-B", "PD-LI", "PD-RI", "PD-TI", "PD-BI"};
  const Orientation edge[] = {Orientation::kLeft, Orientation::kRight, Orientation::kTop,
                              Orientation::kBottom};
  for (std::size_t i = 0; i < 8; ++i) {
    CHECK(subsets[i].name == names[i]);
    CHECK(subsets[i].orientation == edge[i % 4]);
    CHECK(subsets[i].background ==
          (i < 4 ? Background::kBlack : Background::kIntegratedPadding));
  }
  CHECK(subset_output_path("PD-L", "dog/b.jpg") == "PD-L/dog/b.png");
  CHECK(subset_output_path("PD-TI", "x.PNG") == "PD-TI/x.png");
}

TEST_CASE("two inputs give sixteen outputs and a matching manifest") {
  TempDir in("gen_in"), out("gen_out");
  make_corpus(in.path());
  GenOptions opts{in.path(), out.path()};
  const Manifest m = generate_pd(opts);
  CHECK(m.records.size() == 16);
  CHECK(m.failures.empty());
  CHECK(count_files(out.path(), ".png") == 16);
  CHECK(fs::exists(out.path() / "manifest.json"));
  CHECK(m.tool_version == kToolVersion);
  CHECK(m.intensity == 0.3);

  for (const PdSubset& s : pd_subsets()) {
    CHECK(fs::exists(out.path() / s.name / "cat" / "a.png"));
    CHECK(fs::exists(out.path() / s.name / "dog" / "b.png"));
  }
  for (std::size_t i = 1; i < m.records.size(); ++i) {
    CHECK(std::tie(m.records[i - 1].relpath, m.records[i - 1].subset) <
          std::tie(m.records[i].relpath, m.records[i].subset));
  }
  for (const ManifestRecord& r : m.records) {
    const auto s = std::find_if(pd_subsets().begin(), pd_subsets().end(),
                                [&](const PdSubset& p) { return p.name == r.subset; });
    REQUIRE(s != pd_subsets().end());
    CHECK(r.params == preset_params(s->orientation, 0.3));
    CHECK(r.item_seed == derive_item_seed(0, r.relpath));
    const ImageBuffer written = read_image(out.path() / r.output);
    CHECK(pixel_digest(written) == r.digest);
  }

  // The manifest on disk is the serialized return value and parses back.
  const std::string text = read_text(out.path() / "manifest.json");
  CHECK(text == manifest_text(m));
  const Manifest back = manifest_from_json(nlohmann::json::parse(text));
  CHECK(manifest_text(back) == text);
}

TEST_CASE("padding subsets introduce no black pixels") {
  TempDir in("pad_in"), out("pad_out");
  write_png(in.path() / "n.png", noise_image(64, 64, 3, 5));
  const Manifest m = generate_pd({in.path(), out.path()});
  for (const char* name : {"PD-LI", "PD-RI", "PD-TI", "PD-BI"}) {
    const ImageBuffer img = read_image(out.path() / name / "n.png");
    std::size_t black = 0;
    for (int y = 0; y < 64; ++y)
      for (int x = 0; x < 64; ++x) {
        const std::uint8_t* p = img.pixel(x, y);
        black += p[0] == 0 && p[1] == 0 && p[2] == 0;
      }
    CHECK(black == 0);
  }
  const ImageBuffer left = read_image(out.path() / "PD-L" / "n.png");
  std::size_t black = 0;
  for (int y = 0; y < 64; ++y)
    for (int x = 0; x < 64; ++x) black += left.pixel(x, y)[0] == 0;
  CHECK(black > 0);
}

TEST_CASE("runs are deterministic across repeats, threads and enumeration order") {
  TempDir in("det_in"), o1("det_1"), o2("det_2"), o3("det_3");
  for (int i = 0; i < 6; ++i)
    put(in.path() / ("d" + std::to_string(i % 2)) / ("img" + std::to_string(i) + ".png"),
              noise_image(30 + i, 25, 3, i));
  GenOptions a{in.path(), o1.path(), 0.25, 7, 1};
  GenOptions b{in.path(), o2.path(), 0.25, 7, 4};
  GenOptions c{in.path(), o3.path(), 0.25, 7, 3};
  const Manifest ma = generate_pd(a);
  const Manifest mb = generate_pd(b);
  std::vector<std::string> shuffled = scan_inputs(in.path());
  std::shuffle(shuffled.begin(), shuffled.end(), std::mt19937(3));
  std::reverse(shuffled.begin(), shuffled.end());
  const Manifest mc = generate_pd_from(c, shuffled);
  CHECK(manifest_text(ma) == manifest_text(mb));
  CHECK(manifest_text(ma) == manifest_text(mc));
  CHECK(read_text(o1.path() / "manifest.json") == read_text(o3.path() / "manifest.json"));
}

TEST_CASE("decode failures are recorded and skipped") {
  TempDir in("fail_in"), out("fail_out");
  write_png(in.path() / "good.png", noise_image(20, 20, 1, 1));
  write_text(in.path() / "bad.jpg", "not a jpeg");
  write_text(in.path() / "notes.txt", "ignored");
  const Manifest m = generate_pd({in.path(), out.path()});
  CHECK(m.records.size() == 8);
  REQUIRE(m.failures.size() == 1);
  CHECK(m.failures[0].relpath == "bad.jpg");
  CHECK(m.failures[0].error.rfind("DecodeError", 0) == 0);
  CHECK(count_files(out.path(), ".png") == 8);
}

TEST_CASE("empty input and invalid options") {
  TempDir in("empty_in"), out("empty_out");
  write_text(in.path() / "readme.txt", "no images");
  try {
    generate_pd({in.path(), out.path()});
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kEmptyInput);
  }
  write_png(in.path() / "x.png", noise_image(8, 8, 1, 1));
  write_png(in.path() / "x.jpg", noise_image(8, 8, 1, 1));
  CHECK_THROWS_AS(generate_pd({in.path(), out.path()}), Error);
  fs::remove(in.path() / "x.jpg");
  GenOptions bad{in.path(), out.path(), 0.0};
  try {
    generate_pd(bad);
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInvalidIntensity);
  }
  CHECK_THROWS_AS(generate_pd({in.path() / "missing", out.path()}), Error);
}

TEST_CASE("item seeds") {
  CHECK(derive_item_seed(1, "a/b.png") == derive_item_seed(1, "a/b.png"));
  CHECK(derive_item_seed(1, "a/b.png") != derive_item_seed(2, "a/b.png"));

  std::unordered_set<std::uint64_t> seen;
  std::unordered_set<std::uint64_t> seen_other;
  std::size_t same_under_new_seed = 0;
  for (int i = 0; i < 100000; ++i) {
    const std::string path = "n" + std::to_string(i / 1000) + "/img_" + std::to_string(i) + ".JPEG";
    const std::uint64_t s = derive_item_seed(2024, path);
    CHECK(seen.insert(s).second);
    const std::uint64_t t = derive_item_seed(2025, path);
    same_under_new_seed += s == t;
    seen_other.insert(t);
  }
  CHECK(seen.size() == 100000);
  CHECK(seen_other.size() == 100000);
  CHECK(same_under_new_seed == 0);
}

TEST_CASE("manifest parsing rejects malformed documents") {
  for (const char* bad : {"{}", R"({"tool_version": "1", "global_seed": -1})",
                          R"({"tool_version": "1", "global_seed": 0, "intensity": 0.3,
                              "frame_policy": {"convention": "centered", "interpolation": "bilinear"},
                              "records": [{"relpath": "a"}], "failures": []})"}) {
    CAPTURE(bad);
    try {
      manifest_from_json(nlohmann::json::parse(bad));
      FAIL("no throw");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kMalformedRecord);
    }
  }
}
