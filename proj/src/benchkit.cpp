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

#include "mpd/benchkit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "mpd/error.hpp"

namespace mpd {

namespace {

std::string as_label(const nlohmann::json& j, std::size_t line) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  throw Error(ErrorCode::kMalformedRecord,
              "line " + std::to_string(line) + ": label must be string or int");
}

}  // namespace

PredictionSet::PredictionSet(std::vector<PredictionRecord> records)
    : records_(std::move(records)) {
  std::unordered_set<std::string> seen;
  for (const auto& r : records_) {
    if (!seen.insert(r.id).second) {
      throw Error(ErrorCode::kMalformedRecord, "duplicate id " + r.id);
    }
    if (r.topk.size() < kTopK) {
      throw Error(ErrorCode::kMalformedRecord,
                  "record " + r.id + " has fewer than 5 predictions");
    }
  }
}

PredictionSet PredictionSet::parse_jsonl(std::string_view text) {
  std::vector<PredictionRecord> records;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const std::size_t nl = text.find('\n');
    const std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kMalformedRecord,
                  "line " + std::to_string(line_no) + ": " + e.what());
    }
    if (!j.is_object() || !j.contains("id") || !j.contains("label") ||
        !j.contains("topk") || !j["topk"].is_array()) {
      throw Error(ErrorCode::kMalformedRecord,
                  "line " + std::to_string(line_no) + ": need id, label, topk");
    }
    PredictionRecord r{as_label(j["id"], line_no), as_label(j["label"], line_no),
                       {}};
    for (const auto& t : j["topk"]) r.topk.push_back(as_label(t, line_no));
    records.push_back(std::move(r));
  }
  return PredictionSet(std::move(records));
}

Score score(const PredictionSet& preds) {
  if (preds.size() == 0) {
    throw Error(ErrorCode::kMalformedRecord, "empty prediction set");
  }
  std::size_t hit1 = 0, hit5 = 0;
  for (const auto& r : preds.records()) {
    if (r.topk.front() == r.label) ++hit1;
    if (std::find(r.topk.begin(), r.topk.begin() + kTopK, r.label) !=
        r.topk.begin() + kTopK) {
      ++hit5;
    }
  }
  const double n = static_cast<double>(preds.size());
  return {100.0 * static_cast<double>(hit1) / n,
          100.0 * static_cast<double>(hit5) / n, preds.size()};
}

std::string format_percent(double value) {
  // The nudge absorbs binary representation error of decimal ties.
  const double scaled = std::floor(std::abs(value) * 100.0 + 0.5 + 1e-7);
  const long long cents = static_cast<long long>(scaled);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s%lld.%02lld",
                value < 0 && cents != 0 ? "-" : "", cents / 100, cents % 100);
  return buf;
}

const std::array<SubsetGroup, 2>& subset_groups() noexcept {
  static const std::array<SubsetGroup, 2> kGroups{{
      {"PD (black)", {"PD-T", "PD-B", "PD-L", "PD-R"}},
      {"PD (padding)", {"PD-TI", "PD-BI", "PD-LI", "PD-RI"}},
  }};
  return kGroups;
}

Report report(const PredictionSet& baseline, const NamedPredictions& subsets,
              std::string baseline_name) {
  Report r;
  r.baseline_name = std::move(baseline_name);
  r.baseline = score(baseline);

  std::unordered_map<std::string, const std::string*> labels;
  for (const auto& rec : baseline.records()) labels[rec.id] = &rec.label;

  std::unordered_map<std::string, std::size_t> index;
  for (const auto& [name, preds] : subsets) {
    for (const auto& rec : preds.records()) {
      const auto it = labels.find(rec.id);
      if (it != labels.end() && *it->second != rec.label) {
        throw Error(ErrorCode::kLabelMismatch,
                    name + ": id " + rec.id + " disagrees with the baseline label");
      }
    }
    const Score s = score(preds);
    if (!index.emplace(name, r.subsets.size()).second) {
      throw Error(ErrorCode::kInvalidArgument, "subset " + name + " given twice");
    }
    r.subsets.push_back({name, s, r.baseline.top1 - s.top1,
                         r.baseline.top5 - s.top5});
  }

  for (const SubsetGroup& g : subset_groups()) {
    std::size_t present = 0;
    for (auto m : g.members) present += index.count(std::string(m));
    if (present == 0) continue;
    if (present != g.members.size()) {
      for (auto m : g.members) {
        if (!index.count(std::string(m))) {
          throw Error(ErrorCode::kMissingSubset,
                      std::string(g.name) + " lacks " + std::string(m));
        }
      }
    }
    GroupMean mean{std::string(g.name), {}, 0.0, 0.0};
    for (auto m : g.members) {
      const SubsetScore& s = r.subsets[index.at(std::string(m))];
      mean.members.emplace_back(m);
      mean.top1 += s.score.top1;
      mean.top5 += s.score.top5;
    }
    mean.top1 /= static_cast<double>(g.members.size());
    mean.top5 /= static_cast<double>(g.members.size());
    r.groups.push_back(std::move(mean));
  }
  return r;
}

std::string report_csv(const Report& r) {
  std::ostringstream os;
  os << "subset,top1,top5,drop_top1,drop_top5\n";
  os << r.baseline_name << ',' << format_percent(r.baseline.top1) << ','
     << format_percent(r.baseline.top5) << ",0.00,0.00\n";
  for (const auto& s : r.subsets) {
    os << s.name << ',' << format_percent(s.score.top1) << ','
       << format_percent(s.score.top5) << ',' << format_percent(s.drop_top1)
       << ',' << format_percent(s.drop_top5) << '\n';
  }
  for (const auto& g : r.groups) {
    os << "mean " << g.name << ',' << format_percent(g.top1) << ','
       << format_percent(g.top5) << ',' << format_percent(r.baseline.top1 - g.top1)
       << ',' << format_percent(r.baseline.top5 - g.top5) << '\n';
  }
  return os.str();
}

std::string report_table(const Report& r) {
  std::vector<std::array<std::string, 5>> rows;
  rows.push_back({"subset", "top1", "top5", "drop1", "drop5"});
  rows.push_back({r.baseline_name, format_percent(r.baseline.top1),
                  format_percent(r.baseline.top5), "0.00", "0.00"});
  for (const auto& s : r.subsets) {
    rows.push_back({s.name, format_percent(s.score.top1),
                    format_percent(s.score.top5), format_percent(s.drop_top1),
                    format_percent(s.drop_top5)});
  }
  for (const auto& g : r.groups) {
    rows.push_back({"mean " + g.name, format_percent(g.top1),
                    format_percent(g.top5),
                    format_percent(r.baseline.top1 - g.top1),
                    format_percent(r.baseline.top5 - g.top5)});
  }
  std::array<std::size_t, 5> width{};
  for (const auto& row : rows)
    for (std::size_t i = 0; i < row.size(); ++i)
      width[i] = std::max(width[i], row[i].size());
  std::ostringstream os;
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      const std::string& cell = row[i];
      if (i == 0) {
        os << cell << std::string(width[i] - cell.size(), ' ');
      } else {
        os << "  " << std::string(width[i] - cell.size(), ' ') << cell;
      }
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace mpd
