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

#ifndef MPD_BENCHKIT_HPP_
#define MPD_BENCHKIT_HPP_

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mpd {

inline constexpr std::size_t kTopK = 5;

struct PredictionRecord {
  std::string id;
  std::string label;
  std::vector<std::string> topk;  // ranked, best first
};

class PredictionSet {
 public:
  /// Throws Error(kMalformedRecord) on duplicate ids or fewer than 5
  /// predictions in a record.
  explicit PredictionSet(std::vector<PredictionRecord> records);

  /// One JSON object per line: {"id": .., "label": .., "topk": [..]}.
  /// Numeric labels and ids are normalized to their decimal text.
  static PredictionSet parse_jsonl(std::string_view text);

  const std::vector<PredictionRecord>& records() const noexcept {
    return records_;
  }
  std::size_t size() const noexcept { return records_.size(); }

 private:
  std::vector<PredictionRecord> records_;
};

/// Percentages, full precision.
struct Score {
  double top1 = 0.0;
  double top5 = 0.0;
  std::size_t count = 0;
};

/// Throws Error(kMalformedRecord) for an empty set.
Score score(const PredictionSet& preds);

/// Half-up rounding to two decimals, e.g. "63.89".
std::string format_percent(double value);

struct SubsetScore {
  std::string name;
  Score score;
  double drop_top1 = 0.0;  // baseline - subset
  double drop_top5 = 0.0;
};

struct GroupMean {
  std::string name;
  std::vector<std::string> members;
  double top1 = 0.0;
  double top5 = 0.0;
};

struct Report {
  std::string baseline_name;
  Score baseline;
  std::vector<SubsetScore> subsets;
  std::vector<GroupMean> groups;
};

/// Black group: PD-T, PD-B, PD-L, PD-R. Padding group: PD-TI, PD-BI, PD-LI,
/// PD-RI.
struct SubsetGroup {
  std::string_view name;
  std::array<std::string_view, 4> members;
};
const std::array<SubsetGroup, 2>& subset_groups() noexcept;

using NamedPredictions = std::vector<std::pair<std::string, PredictionSet>>;

/// Scores every subset against the baseline. A group mean is reported when
/// any of its members is present; a partially present group raises
/// Error(kMissingSubset). Records sharing an id with the baseline must carry
/// the same label (Error(kLabelMismatch)).
Report report(const PredictionSet& baseline, const NamedPredictions& subsets,
              std::string baseline_name = "original");

std::string report_csv(const Report& r);
std::string report_table(const Report& r);

}  // namespace mpd

#endif  // MPD_BENCHKIT_HPP_
