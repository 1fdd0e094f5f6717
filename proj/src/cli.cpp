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

#include "mpd/cli.hpp"

#include <CLI11.hpp>

#include <array>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "mpd/annotations.hpp"
#include "mpd/annotations_io.hpp"
#include "mpd/autocrowd.hpp"
#include "mpd/benchkit.hpp"
#include "mpd/datasetgen.hpp"
#include "mpd/image_io.hpp"
#include "mpd/presets.hpp"
#include "mpd/version.hpp"
#include "mpd/warp.hpp"

namespace mpd {

namespace fs = std::filesystem;

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

const std::vector<std::string> kPresetNames{
    "left", "right", "top", "bottom",
    "left-top", "left-bottom", "right-top", "right-bottom"};

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out << text;
}

/// Resampling flags shared by every subcommand that warps.
struct SpecFlags {
  std::string background = "black";
  std::string interp = "bilinear";
  std::string fit = "none";
  std::string frame = "centered";
  CLI::Option* background_opt = nullptr;

  void add(CLI::App* cmd, bool with_background = true) {
    if (with_background) {
      background_opt =
          cmd->add_option("--background", background, "Fill outside the warped content")
              ->check(CLI::IsMember({"black", "padding"}))
              ->capture_default_str();
    }
    cmd->add_option("--interp", interp, "Resampling filter")
        ->check(CLI::IsMember({"nearest", "bilinear"}))
        ->capture_default_str();
    cmd->add_option("--fit", fit, "Scale the whole forward image into the canvas")
        ->check(CLI::IsMember({"none", "bbox"}))
        ->capture_default_str();
    cmd->add_option("--frame", frame, "Pixel to complex normalization")
        ->check(CLI::IsMember({"centered", "unit"}))
        ->capture_default_str();
  }

  WarpSpec spec() const {
    WarpSpec s;
    s.background = *parse_background(background);
    s.interpolation = interp == "nearest" ? Interpolation::kNearest
                                          : Interpolation::kBilinear;
    s.fit = fit == "bbox" ? Fit::kBoundingBoxFit : Fit::kNone;
    s.frame = frame == "unit" ? FrameConvention::kUnitSquare
                              : FrameConvention::kCentered;
    return s;
  }
};

/// Parameter source: exactly one of preset, raw coefficients or policy.
struct ParamFlags {
  std::string preset;
  double intensity = 0.3;
  std::array<double, 8> raw{1, 0, 0, 0, 0, 0, 1, 0};
  std::vector<CLI::Option*> raw_opts;
  CLI::Option* preset_opt = nullptr;

  std::string policy_file;
  double probability = 0.0, lo = 0.0, hi = 0.0;
  std::string orientations;
  std::uint64_t seed = 0;
  std::vector<CLI::Option*> policy_opts;
  CLI::Option* seed_opt = nullptr;

  enum class Mode { kNone, kPreset, kRaw, kPolicy };

  void add(CLI::App* cmd) {
    preset_opt = cmd->add_option("--preset", preset, "Named orientation preset")
                     ->check(CLI::IsMember(kPresetNames));
    cmd->add_option("--intensity", intensity, "Preset intensity |c| (> 0)")
        ->capture_default_str();
    static const std::array<const char*, 8> kRawNames{
        "--a-re", "--a-im", "--b-re", "--b-im",
        "--c-re", "--c-im", "--d-re", "--d-im"};
    static const std::array<const char*, 8> kRawHelp{
        "Re(a) of (az+b)/(cz+d)", "Im(a)", "Re(b)", "Im(b)",
        "Re(c)", "Im(c)", "Re(d)", "Im(d)"};
    for (std::size_t i = 0; i < kRawNames.size(); ++i) {
      raw_opts.push_back(cmd->add_option(kRawNames[i], raw[i], kRawHelp[i])
                             ->capture_default_str());
    }
    policy_opts.push_back(
        cmd->add_option("--policy", policy_file, "Augment policy file (key = value)")
            ->check(CLI::ExistingFile));
    policy_opts.push_back(
        cmd->add_option("--probability", probability, "Policy: probability P"));
    policy_opts.push_back(
        cmd->add_option("--intensity-lo", lo, "Policy: lowest intensity"));
    policy_opts.push_back(
        cmd->add_option("--intensity-hi", hi, "Policy: highest intensity"));
    policy_opts.push_back(cmd->add_option(
        "--orientations", orientations, "Policy: comma-separated preset names"));
    seed_opt = cmd->add_option("--seed", seed, "Policy / placement seed")
                   ->capture_default_str();
  }

  bool raw_given() const {
    for (auto* o : raw_opts)
      if (o->count()) return true;
    return false;
  }
  bool policy_given() const {
    for (auto* o : policy_opts)
      if (o->count()) return true;
    return false;
  }

  Mode mode() const {
    const int n = (preset_opt->count() ? 1 : 0) + (raw_given() ? 1 : 0) +
                  (policy_given() ? 1 : 0);
    if (n > 1) {
      throw UsageError(
          "--preset, raw coefficients (--a-re ...) and policy flags are "
          "mutually exclusive");
    }
    if (preset_opt->count()) return Mode::kPreset;
    if (raw_given()) return Mode::kRaw;
    if (policy_given()) return Mode::kPolicy;
    return Mode::kNone;
  }

  AugmentPolicy policy(const SpecFlags& spec_flags) const {
    AugmentPolicy p = policy_file.empty() ? AugmentPolicy{}
                                          : parse_policy(read_text(policy_file));
    if (policy_opts[1]->count()) p.probability = probability;
    if (policy_opts[2]->count()) p.intensity_lo = lo;
    if (policy_opts[3]->count()) p.intensity_hi = hi;
    if (policy_opts[4]->count()) {
      p.orientations = parse_policy("orientations = " + orientations).orientations;
    }
    if (spec_flags.background_opt && spec_flags.background_opt->count()) {
      p.background = *parse_background(spec_flags.background);
    }
    if (seed_opt->count()) p.seed = seed;
    p.validate();
    return p;
  }

  /// Resolves parameters for one item; `key` seeds policy sampling.
  MobiusParams params_for(const std::string& key, const SpecFlags& spec_flags) const {
    switch (mode()) {
      case Mode::kPreset:
        return preset_params(*parse_orientation(preset), intensity);
      case Mode::kRaw:
        return validate_params({raw[0], raw[1]}, {raw[2], raw[3]},
                               {raw[4], raw[5]}, {raw[6], raw[7]});
      case Mode::kPolicy: {
        const AugmentPolicy p = policy(spec_flags);
        return sample_params(p, SplitMix64(derive_item_seed(p.seed, key))).params;
      }
      case Mode::kNone: break;
    }
    throw UsageError("one of --preset, raw coefficients or policy flags is required");
  }

  WarpSpec spec_for(const SpecFlags& spec_flags) const {
    WarpSpec s = spec_flags.spec();
    if (mode() == Mode::kPolicy) s.background = policy(spec_flags).background;
    return s;
  }
};

int cmd_warp(const ParamFlags& pf, const SpecFlags& sf, const std::string& in,
             const std::string& out, std::ostream& os) {
  const ImageBuffer src = read_image(in);
  const MobiusParams p = pf.params_for(fs::path(in).filename().string(), sf);
  const WarpedImage w = warp_image(src.view(), p, pf.spec_for(sf));
  write_image(out, w.image);
  os << "wrote " << out << " (" << w.mask.count() << " content px of "
     << static_cast<std::size_t>(w.image.width()) * w.image.height() << ")\n";
  return kExitOk;
}

struct SweepFlags {
  std::string preset;
  double from = 0.1, to = 0.5;
  int steps = 5;
};

int cmd_sweep(const SweepFlags& sw, const SpecFlags& sf, const std::string& in,
              const std::string& outdir, std::ostream& os) {
  if (sw.steps < 1) throw UsageError("--steps must be >= 1");
  const ImageBuffer src = read_image(in);
  fs::create_directories(outdir);
  const Orientation o = *parse_orientation(sw.preset);
  const std::string stem = fs::path(in).stem().string();
  for (int k = 0; k < sw.steps; ++k) {
    const double t = sw.steps == 1 ? 0.0 : static_cast<double>(k) / (sw.steps - 1);
    const double intensity = sw.from + t * (sw.to - sw.from);
    const WarpedImage w =
        warp_image(src.view(), preset_params(o, intensity), sf.spec());
    char name[256];
    std::snprintf(name, sizeof name, "%s_%s_%d_%.3f.png", stem.c_str(),
                  sw.preset.c_str(), k, intensity);
    const fs::path path = fs::path(outdir) / name;
    write_png(path, w.image);
    os << path.string() << '\n';
  }
  return kExitOk;
}

struct GenFlags {
  std::string in, out, interp = "bilinear", frame = "centered";
  double intensity = 0.3;
  std::uint64_t seed = 0;
  int threads = 1;
};

int cmd_gen_pd(const GenFlags& g, std::ostream& os) {
  GenOptions opts;
  opts.input_dir = g.in;
  opts.output_dir = g.out;
  opts.intensity = g.intensity;
  opts.seed = g.seed;
  opts.threads = g.threads;
  opts.interpolation =
      g.interp == "nearest" ? Interpolation::kNearest : Interpolation::kBilinear;
  opts.frame =
      g.frame == "unit" ? FrameConvention::kUnitSquare : FrameConvention::kCentered;
  const Manifest m = generate_pd(opts);
  os << "generated " << m.records.size() << " images, " << m.failures.size()
     << " failures; manifest " << (fs::path(g.out) / "manifest.json").string()
     << '\n';
  return kExitOk;
}

struct AnnFlags {
  std::string in, out, image_root, size;
  int samples = kDefaultBoxSamplesPerEdge;
  double min_area = kDefaultMinBoxAreaPx;
};

std::optional<ImageSize> parse_size(const std::string& s) {
  if (s.empty()) return std::nullopt;
  int w = 0, h = 0;
  char x = 0;
  std::istringstream is(s);
  if (!(is >> w >> x >> h) || (x != 'x' && x != 'X') || w < 1 || h < 1) {
    throw UsageError("--size must look like 224x224");
  }
  return ImageSize{w, h};
}

int cmd_points(const ParamFlags& pf, const SpecFlags& sf, const AnnFlags& af,
               std::ostream& os) {
  const auto records = parse_points_jsonl(read_text(af.in));
  const auto fixed = parse_size(af.size);
  const fs::path root = af.image_root.empty()
                            ? fs::path(af.in).parent_path()
                            : fs::path(af.image_root);
  std::string text;
  std::size_t dropped_total = 0;
  for (const PointRecord& rec : records) {
    const ImageSize size = fixed ? *fixed : read_image_size(root / rec.image);
    const WarpPlan plan = make_plan(pf.params_for(rec.image, sf), size.width,
                                    size.height, pf.spec_for(sf));
    const PointTransform t =
        transform_points(PointSet{rec.points, plan.frame}, plan);
    dropped_total += t.dropped;
    text += point_record_line({rec.image, t.kept.points}, nullptr, t.dropped) + "\n";
  }
  write_text(af.out, text);
  os << "transformed " << records.size() << " records, dropped " << dropped_total
     << " points\n";
  return kExitOk;
}

int cmd_boxes(const ParamFlags& pf, const SpecFlags& sf, const AnnFlags& af,
              std::ostream& os) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(read_text(af.in));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kMalformedRecord, e.what());
  }
  const WarpSpec spec = pf.spec_for(sf);
  const CocoTransform t = transform_coco(
      doc,
      [&](const CocoImageInfo& im) -> std::optional<WarpPlan> {
        const std::string key =
            im.file_name.empty() ? std::to_string(im.id) : im.file_name;
        return make_plan(pf.params_for(key, sf), im.width, im.height, spec);
      },
      af.samples, af.min_area);
  write_text(af.out, t.doc.dump(2) + "\n");
  os << "kept " << t.kept << " boxes, dropped " << t.dropped << '\n';
  return kExitOk;
}

struct CrowdFlags {
  std::string points_in, points_out;
  double density = -1.0;
  int k = 3;
};

int cmd_autocrowd(const ParamFlags& pf, const SpecFlags& sf, const CrowdFlags& cf,
                  const std::string& in, const std::string& out, std::ostream& os) {
  const ImageBuffer src = read_image(in);
  const auto records = parse_points_jsonl(read_text(cf.points_in));
  const std::string name = fs::path(in).filename().string();
  const PointRecord* rec = nullptr;
  for (const auto& r : records) {
    if (r.image == name || fs::path(r.image).filename() == name) rec = &r;
  }
  if (!rec && records.size() == 1) rec = &records.front();
  if (!rec) {
    throw Error(ErrorCode::kEmptyAnnotations, "no point record for " + name);
  }
  WarpSpec spec = sf.spec();
  spec.background = Background::kBlack;
  const WarpPlan plan =
      make_plan(pf.params_for(name, sf), src.width(), src.height(), spec);
  const WarpedImage warped = warp_image(src.view(), plan);
  const PointSet pts{rec->points, plan.frame};
  const PointTransform moved = transform_points(pts, plan);
  const auto patches = extract_head_patches(src.view(), pts, cf.k);
  if (patches.empty()) {
    throw Error(ErrorCode::kEmptyAnnotations, "every head crop leaves the image");
  }
  const double density =
      cf.density >= 0.0
          ? cf.density
          : head_density_per_kpx(rec->points.size(),
                                 static_cast<std::size_t>(src.width()) * src.height());
  const CrowdComposite crowd = compose_autocrowd(
      warped, patches, density, SplitMix64(derive_item_seed(pf.seed, name)));
  write_image(out, crowd.image);

  PointRecord result{rec->image, moved.kept.points};
  std::vector<bool> augmented(result.points.size(), false);
  for (const PixelPoint& p : crowd.added.points) {
    result.points.push_back(p);
    augmented.push_back(true);
  }
  write_text(cf.points_out, point_record_line(result, &augmented, moved.dropped) + "\n");
  os << "kept " << moved.kept.points.size() << " labels, dropped " << moved.dropped
     << ", added " << crowd.added.points.size() << '\n';
  return kExitOk;
}

struct ReportFlags {
  std::string baseline, baseline_name = "original", csv;
  std::vector<std::string> subsets;
};

int cmd_report(const ReportFlags& rf, std::ostream& os) {
  const PredictionSet base = PredictionSet::parse_jsonl(read_text(rf.baseline));
  NamedPredictions named;
  for (const std::string& s : rf.subsets) {
    const std::size_t eq = s.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == s.size()) {
      throw UsageError("--subset expects NAME=FILE, got '" + s + "'");
    }
    named.emplace_back(s.substr(0, eq),
                       PredictionSet::parse_jsonl(read_text(s.substr(eq + 1))));
  }
  const Report r = report(base, named, rf.baseline_name);
  if (!rf.csv.empty()) write_text(rf.csv, report_csv(r));
  os << report_table(r);
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Mobius-transform perspective distortion toolkit", "mpd"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1, 1);

  ParamFlags warp_pf, points_pf, boxes_pf, crowd_pf;
  SpecFlags warp_sf, sweep_sf, points_sf, boxes_sf, crowd_sf;
  std::string warp_in, warp_out, sweep_in, sweep_out, crowd_in, crowd_out;

  auto* warp = app.add_subcommand("warp", "Warp a single image");
  warp_pf.add(warp);
  warp_sf.add(warp);
  warp->add_option("input", warp_in, "Input PNG/JPEG")->required()->check(CLI::ExistingFile);
  warp->add_option("output", warp_out, "Output image (.png or .jpg)")->required();

  SweepFlags sw;
  auto* sweep = app.add_subcommand("sweep", "Write an intensity series for one preset");
  sweep->add_option("--preset", sw.preset, "Named orientation preset")
      ->required()
      ->check(CLI::IsMember(kPresetNames));
  sweep->add_option("--from", sw.from, "First intensity")->capture_default_str();
  sweep->add_option("--to", sw.to, "Last intensity")->capture_default_str();
  sweep->add_option("--steps", sw.steps, "Number of images")->capture_default_str();
  sweep_sf.add(sweep);
  sweep->add_option("input", sweep_in, "Input PNG/JPEG")->required()->check(CLI::ExistingFile);
  sweep->add_option("outdir", sweep_out, "Output directory")->required();

  GenFlags gen;
  auto* gen_pd = app.add_subcommand("gen-pd", "Generate the eight PD benchmark subsets");
  gen_pd->add_option("--in", gen.in, "Input image directory")->required()->check(CLI::ExistingDirectory);
  gen_pd->add_option("--out", gen.out, "Output directory")->required();
  gen_pd->add_option("--intensity", gen.intensity, "Fixed preset intensity")->capture_default_str();
  gen_pd->add_option("--seed", gen.seed, "Global seed recorded in the manifest")->capture_default_str();
  gen_pd->add_option("--threads", gen.threads, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
  gen_pd->add_option("--interp", gen.interp, "Resampling filter")
      ->check(CLI::IsMember({"nearest", "bilinear"}))
      ->capture_default_str();
  gen_pd->add_option("--frame", gen.frame, "Pixel to complex normalization")
      ->check(CLI::IsMember({"centered", "unit"}))
      ->capture_default_str();

  AnnFlags pts_af, box_af;
  auto* points = app.add_subcommand("points", "Transform point annotations (JSON lines)");
  points_pf.add(points);
  points_sf.add(points);
  points->add_option("--in", pts_af.in, "Input JSON-lines point file")->required()->check(CLI::ExistingFile);
  points->add_option("--out", pts_af.out, "Output JSON-lines point file")->required();
  points->add_option("--image-root", pts_af.image_root,
                     "Directory the records' image paths are relative to");
  points->add_option("--size", pts_af.size, "Canvas size WxH instead of reading images");

  auto* boxes = app.add_subcommand("boxes", "Transform COCO-style bounding boxes");
  boxes_pf.add(boxes);
  boxes_sf.add(boxes);
  boxes->add_option("--in", box_af.in, "Input COCO-style JSON")->required()->check(CLI::ExistingFile);
  boxes->add_option("--out", box_af.out, "Output COCO-style JSON")->required();
  boxes->add_option("--samples-per-edge", box_af.samples, "Hull samples per box edge")
      ->capture_default_str()
      ->check(CLI::Range(2, 1 << 20));
  boxes->add_option("--min-area", box_af.min_area, "Drop boxes smaller than this (px^2)")
      ->capture_default_str();

  CrowdFlags cf;
  auto* crowd = app.add_subcommand("autocrowd", "Warp a crowd scene and paste synthetic heads into the background");
  crowd_pf.add(crowd);
  crowd_sf.add(crowd, false);
  crowd->add_option("--points", cf.points_in, "Input JSON-lines head annotations")->required()->check(CLI::ExistingFile);
  crowd->add_option("--out-points", cf.points_out, "Output JSON-lines labels")->required();
  crowd->add_option("--density", cf.density,
                    "Heads per 1000 background px (default: source density)");
  crowd->add_option("--k", cf.k, "Neighbours used for head radius")->capture_default_str()->check(CLI::PositiveNumber);
  crowd->add_option("input", crowd_in, "Input scene image")->required()->check(CLI::ExistingFile);
  crowd->add_option("output", crowd_out, "Output image")->required();

  ReportFlags rf;
  auto* rep = app.add_subcommand("report", "Score prediction files and print a robustness table");
  rep->add_option("--baseline", rf.baseline, "Baseline predictions (JSON lines)")->required()->check(CLI::ExistingFile);
  rep->add_option("--baseline-name", rf.baseline_name, "Row label for the baseline")->capture_default_str();
  rep->add_option("--subset", rf.subsets, "NAME=FILE, repeatable")->required();
  rep->add_option("--csv", rf.csv, "Also write the report as CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*warp) return cmd_warp(warp_pf, warp_sf, warp_in, warp_out, out);
    if (*sweep) return cmd_sweep(sw, sweep_sf, sweep_in, sweep_out, out);
    if (*gen_pd) return cmd_gen_pd(gen, out);
    if (*points) return cmd_points(points_pf, points_sf, pts_af, out);
    if (*boxes) return cmd_boxes(boxes_pf, boxes_sf, box_af, out);
    if (*crowd) return cmd_autocrowd(crowd_pf, crowd_sf, cf, crowd_in, crowd_out, out);
    if (*rep) return cmd_report(rf, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\nRun with --help for the full contract.\n";
    return kExitUsage;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kInvalidPolicy) {
      err << "usage error: " << e.what() << '\n';
      return kExitUsage;
    }
    err << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace mpd
