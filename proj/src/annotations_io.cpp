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

#include "mpd/annotations_io.hpp"

#include <map>

namespace mpd {

using nlohmann::json;

std::vector<PointRecord> parse_points_jsonl(std::string_view text) {
  std::vector<PointRecord> out;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const std::size_t nl = text.find('\n');
    const std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    const std::string where = "line " + std::to_string(line_no);
    try {
      const json j = json::parse(line);
      PointRecord rec{j.at("image").get<std::string>(), {}};
      for (const json& p : j.at("points")) {
        if (!p.is_array() || p.size() != 2) {
          throw Error(ErrorCode::kMalformedRecord, where + ": point must be [x, y]");
        }
        rec.points.push_back({p[0].get<double>(), p[1].get<double>()});
      }
      out.push_back(std::move(rec));
    } catch (const json::exception& e) {
      throw Error(ErrorCode::kMalformedRecord, where + ": " + e.what());
    }
  }
  return out;
}

std::string point_record_line(const PointRecord& rec,
                              const std::vector<bool>* augmented,
                              std::optional<std::size_t> dropped) {
  json pts = json::array();
  for (const PixelPoint& p : rec.points) pts.push_back({p.x, p.y});
  json j = {{"image", rec.image}, {"points", pts}};
  if (augmented) {
    json flags = json::array();
    for (bool b : *augmented) flags.push_back(b);
    j["augmented"] = flags;
  }
  if (dropped) j["dropped"] = *dropped;
  return j.dump();
}

CocoTransform transform_coco(const json& doc, const PlanForImage& plan_for,
                             int samples_per_edge, double min_area_px) {
  try {
    CocoTransform out{doc, 0, 0};
    std::map<long long, CocoImageInfo> images;
    for (const json& im : doc.at("images")) {
      CocoImageInfo info{im.at("id").get<long long>(),
                         im.value("file_name", std::string()),
                         im.at("width").get<int>(), im.at("height").get<int>()};
      images[info.id] = info;
    }
    std::map<long long, std::optional<WarpPlan>> plans;
    json kept = json::array();
    json dropped_ids = json::array();
    for (const json& ann : doc.at("annotations")) {
      const long long image_id = ann.at("image_id").get<long long>();
      const auto im = images.find(image_id);
      if (im == images.end()) {
        throw Error(ErrorCode::kMalformedRecord,
                    "annotation refers to unknown image " + std::to_string(image_id));
      }
      auto [slot, fresh] = plans.try_emplace(image_id);
      if (fresh) slot->second = plan_for(im->second);
      const json& bb = ann.at("bbox");
      if (!bb.is_array() || bb.size() != 4) {
        throw Error(ErrorCode::kMalformedRecord, "bbox must be [x, y, w, h]");
      }
      if (!slot->second) {
        kept.push_back(ann);
        ++out.kept;
        continue;
      }
      const double x = bb[0].get<double>(), y = bb[1].get<double>();
      const double w = bb[2].get<double>(), h = bb[3].get<double>();
      const BoxSet set{{Box(x, y, x + w, y + h)}, slot->second->frame};
      const BoxTransform t =
          transform_boxes(set, *slot->second, samples_per_edge, min_area_px);
      if (t.kept.boxes.empty()) {
        dropped_ids.push_back(ann.value("id", json()));
        ++out.dropped;
        continue;
      }
      const Box& b = t.kept.boxes.front();
      json moved = ann;
      moved["bbox"] = {b.x_min(), b.y_min(), b.x_max() - b.x_min(),
                       b.y_max() - b.y_min()};
      moved["area"] = b.area();
      kept.push_back(std::move(moved));
      ++out.kept;
    }
    out.doc["annotations"] = kept;
    out.doc["mpd"] = {{"dropped_annotations", dropped_ids}};
    return out;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kMalformedRecord, e.what());
  }
}

}  // namespace mpd
