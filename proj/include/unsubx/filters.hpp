// Copyright 2026 The unsubx Authors
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
#pragma once

#include <array>
#include <bitset>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "unsubx/types.hpp"

namespace unsubx {

/// Metrics that carry a dual-sided slider.
enum class FilterMetric : std::uint8_t {
  kPrice,
  kCpuRank,
  kDownloads,
  kCitations,
  kAuthorships,
  kUsage,
  kOaPercent,
};

inline constexpr std::size_t kFilterMetricCount = 7;
inline constexpr std::array<FilterMetric, kFilterMetricCount> kAllFilterMetrics = {
    FilterMetric::kPrice,       FilterMetric::kCpuRank, FilterMetric::kDownloads,
    FilterMetric::kCitations,   FilterMetric::kAuthorships, FilterMetric::kUsage,
    FilterMetric::kOaPercent};

/// Query-parameter stem, e.g. "price" for price_min/price_max.
std::string_view metric_name(FilterMetric m);

/// Value of `m` for a record; nullopt when undefined (a missing cpu_rank).
std::optional<double> metric_value(const JournalRecord& rec, FilterMetric m);

/// Closed interval [lo, hi].
struct Range {
  double lo;
  double hi;

  bool contains(double v) const noexcept { return lo <= v && v <= hi; }
  bool operator==(const Range&) const = default;
};

class StatusSet {
 public:
  StatusSet() { bits_.set(); }
  static StatusSet none() { StatusSet s; s.bits_.reset(); return s; }
  static StatusSet of(std::initializer_list<SubscribedStatus> statuses);

  bool contains(SubscribedStatus s) const { return bits_.test(index_of(s)); }
  void insert(SubscribedStatus s) { bits_.set(index_of(s)); }
  void erase(SubscribedStatus s) { bits_.reset(index_of(s)); }
  bool all() const { return bits_.all(); }
  bool operator==(const StatusSet&) const = default;

 private:
  std::bitset<4> bits_;
};

/// Conjunctive filter. An absent range places no constraint on its metric;
/// a default-constructed spec selects every record.
struct FilterSpec {
  std::array<std::optional<Range>, kFilterMetricCount> ranges{};
  StatusSet statuses;

  std::optional<Range>& range(FilterMetric m) { return ranges[static_cast<std::size_t>(m)]; }
  const std::optional<Range>& range(FilterMetric m) const { return ranges[static_cast<std::size_t>(m)]; }

  /// Throws Error(kInvalidRange) if any present range has lo > hi or a NaN.
  void check() const;

  /// Reads price_min, price_max, ... and statuses=TRUE,MAYBE,BLANK. A lone
  /// _min or _max leaves the other side open. Unknown keys are ignored.
  /// Throws Error(kInvalidArgument) on malformed values, kInvalidRange on
  /// lo > hi.
  static FilterSpec from_query(const std::multimap<std::string, std::string>& params);
  /// Inverse of from_query for the keys this spec constrains.
  std::vector<std::pair<std::string, std::string>> to_query() const;

  bool operator==(const FilterSpec&) const = default;
};

/// Ordered subset of a package's records. Does not own the package; the
/// package must outlive the view.
struct View {
  const Package* package = nullptr;
  std::vector<std::size_t> rows;

  std::size_t size() const noexcept { return rows.size(); }
  bool empty() const noexcept { return rows.empty(); }
  const JournalRecord& record(std::size_t i) const { return package->records[rows[i]]; }

  bool operator==(const View& other) const { return package == other.package && rows == other.rows; }
};

View whole(const Package& pkg);

/// Records whose every constrained metric lies in its closed range and whose
/// status is in the status set, in original order. Records with an
/// undefined value for a constrained metric are excluded.
View apply(const Package& pkg, const FilterSpec& spec);
View apply(const View& view, const FilterSpec& spec);

using SliderBounds = std::array<std::pair<double, double>, kFilterMetricCount>;

/// Exact data min/max per metric. Throws Error(kEmptyPackage) on an empty
/// package. Undefined values are skipped; a metric with no defined value
/// reports (0, 0).
SliderBounds slider_bounds(const Package& pkg);

/// Spec whose ranges equal the full data extent.
FilterSpec full_extent(const SliderBounds& bounds);

}  // namespace unsubx
