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

#include "mpd/autocrowd.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

namespace mpd {

namespace {

/// Summed-area table over the content mask; answers "is this rectangle all
/// background" in O(1).
class ContentIntegral {
 public:
  explicit ContentIntegral(const Mask& m)
      : w_(m.width()), h_(m.height()),
        sums_(static_cast<std::size_t>(w_ + 1) * (h_ + 1), 0) {
    for (int y = 0; y < h_; ++y) {
      std::uint32_t row = 0;
      for (int x = 0; x < w_; ++x) {
        row += m.at(x, y) ? 1 : 0;
        at(x + 1, y + 1) = at(x + 1, y) + row;
      }
    }
  }

  // Inclusive pixel rectangle.
  std::uint32_t content_in(int x0, int y0, int x1, int y1) const {
    return at(x1 + 1, y1 + 1) - at(x0, y1 + 1) - at(x1 + 1, y0) + at(x0, y0);
  }

 private:
  std::uint32_t& at(int x, int y) {
    return sums_[static_cast<std::size_t>(y) * (w_ + 1) + x];
  }
  std::uint32_t at(int x, int y) const {
    return sums_[static_cast<std::size_t>(y) * (w_ + 1) + x];
  }

  int w_, h_;
  std::vector<std::uint32_t> sums_;
};

}  // namespace

std::vector<HeadPatch> extract_head_patches(ImageView src, const PointSet& pts,
                                            int k_neighbors) {
  if (pts.points.empty()) {
    throw Error(ErrorCode::kEmptyAnnotations, "no head annotations");
  }
  if (k_neighbors < 1) {
    throw Error(ErrorCode::kInvalidArgument, "k_neighbors must be >= 1");
  }
  const auto& p = pts.points;
  std::vector<HeadPatch> out;
  std::vector<double> dist;
  for (std::size_t i = 0; i < p.size(); ++i) {
    dist.clear();
    for (std::size_t j = 0; j < p.size(); ++j) {
      if (j != i) dist.push_back(std::hypot(p[i].x - p[j].x, p[i].y - p[j].y));
    }
    int radius = kFallbackHeadRadius;
    if (!dist.empty()) {
      const std::size_t k = std::min<std::size_t>(k_neighbors, dist.size());
      std::partial_sort(dist.begin(), dist.begin() + k, dist.end());
      double mean = 0.0;
      for (std::size_t n = 0; n < k; ++n) mean += dist[n];
      mean /= static_cast<double>(k);
      radius = static_cast<int>(
          std::clamp(std::floor(mean / 2.0 + 0.5),
                     static_cast<double>(kMinHeadRadius),
                     static_cast<double>(kMaxHeadRadius)));
    }
    const int cx = static_cast<int>(std::floor(p[i].x + 0.5));
    const int cy = static_cast<int>(std::floor(p[i].y + 0.5));
    if (cx - radius < 0 || cy - radius < 0 || cx + radius >= src.width() ||
        cy + radius >= src.height()) {
      continue;
    }
    const int side = 2 * radius + 1;
    ImageBuffer crop(side, side, src.channels());
    for (int y = 0; y < side; ++y) {
      const std::uint8_t* row = src.pixel(cx - radius, cy - radius + y);
      std::copy(row, row + static_cast<std::size_t>(side) * src.channels(),
                crop.pixel(0, y));
    }
    out.push_back({std::move(crop), p[i], radius});
  }
  return out;
}

double head_density_per_kpx(std::size_t head_count, std::size_t content_px) {
  if (content_px == 0) return 0.0;
  return 1000.0 * static_cast<double>(head_count) /
         static_cast<double>(content_px);
}

CrowdComposite compose_autocrowd(const WarpedImage& warped,
                                 const std::vector<HeadPatch>& patches,
                                 double density_per_kpx, SplitMix64 rng) {
  if (warped.spec().background != Background::kBlack) {
    throw Error(ErrorCode::kInvalidBackground,
                "autocrowd needs a black-background warp");
  }
  if (patches.empty()) {
    throw Error(ErrorCode::kEmptyAnnotations, "no head patches to paste");
  }
  const Mask& mask = warped.mask;
  const int w = mask.width();
  const int h = mask.height();
  const std::size_t background_px =
      static_cast<std::size_t>(w) * h - mask.count();

  CrowdComposite out{warped.image, {{}, warped.plan.frame}, 0,
                     background_px > 0};
  if (background_px == 0 || !(density_per_kpx > 0.0)) return out;
  out.requested = static_cast<std::size_t>(
      std::floor(density_per_kpx * static_cast<double>(background_px) / 1000.0 +
                 0.5));

  const ContentIntegral integral(mask);
  // Valid centres per distinct radius, computed lazily.
  std::vector<std::vector<std::uint32_t>> centres(kMaxHeadRadius + 1);
  std::vector<bool> scanned(kMaxHeadRadius + 1, false);
  auto centres_for = [&](int r) -> const std::vector<std::uint32_t>& {
    if (!scanned[r]) {
      scanned[r] = true;
      for (int y = r; y + r < h; ++y) {
        for (int x = r; x + r < w; ++x) {
          if (integral.content_in(x - r, y - r, x + r, y + r) == 0) {
            centres[r].push_back(static_cast<std::uint32_t>(y) * w + x);
          }
        }
      }
    }
    return centres[r];
  };

  const int ch = out.image.channels();
  for (std::size_t n = 0; n < out.requested; ++n) {
    const auto pick = [&](std::size_t size) {
      return std::min(static_cast<std::size_t>(rng.uniform() * size), size - 1);
    };
    const HeadPatch* patch = &patches[pick(patches.size())];
    if (centres_for(patch->radius).empty()) {
      // Fall back to the smallest patch that fits somewhere.
      const HeadPatch* best = nullptr;
      for (const HeadPatch& cand : patches) {
        if (!centres_for(cand.radius).empty() &&
            (!best || cand.radius < best->radius)) {
          best = &cand;
        }
      }
      if (!best) break;
      patch = best;
    }
    const auto& valid = centres_for(patch->radius);
    const std::uint32_t at = valid[pick(valid.size())];
    const int cx = static_cast<int>(at % w);
    const int cy = static_cast<int>(at / w);
    const int r = patch->radius;
    const int copy_ch = std::min(ch, patch->pixels.channels());
    for (int y = -r; y <= r; ++y) {
      for (int x = -r; x <= r; ++x) {
        const std::uint8_t* s = patch->pixels.pixel(x + r, y + r);
        std::uint8_t* d = out.image.pixel(cx + x, cy + y);
        std::copy(s, s + copy_ch, d);
      }
    }
    out.added.points.push_back({static_cast<double>(cx), static_cast<double>(cy)});
  }
  return out;
}

}  // namespace mpd
