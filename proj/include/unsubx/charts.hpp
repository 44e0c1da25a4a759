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

// Declarative chart documents for the twelve standard plots.
//
// Each ChartSpec serializes to a self-contained Vega-Lite v5 document with
// inline data, so a renderer needs nothing but the JSON. Chart-specific
// facts a renderer cannot derive (catalog id, link group, precomputed bins,
// excluded row counts) travel in "usermeta".

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "unsubx/filters.hpp"
#include "unsubx/metrics.hpp"
#include "unsubx/types.hpp"

namespace unsubx {

inline constexpr std::string_view kVegaLiteSchemaUrl = "https://vega.github.io/schema/vega-lite/v5.json";
inline constexpr std::string_view kChartSpecVersion = "unsubx-chartspec/1";

/// Status palette shared by every status-colored chart.
inline constexpr std::array<std::string_view, 4> kStatusColors = {"blue", "red", "green", "gray"};

inline constexpr std::size_t kAuthorshipBins = 20;
inline constexpr std::size_t kCpuBoxBins = 10;

enum class ChartId : std::uint8_t {
  kUsageVsCostByStatus,
  kUsageVsCostByCpuRank,
  kAuthorshipHistogram,
  kCitationsVsDownloads,
  kUsageVsDownloads,
  kUsageVsCitations,
  kUsageVsAuthorships,
  kUsageVsOaPercent,
  kIfVsCost,
  kNormalizedIfVsLogCost,
  kCpuHistogramBoxes,
  kSubjectChart,
};

enum class Mark { kPoint, kBar, kRect };
enum class Scale { kLinear, kLog };
enum class ColorKind { kStatusPalette, kCpuRankGradient, kNone };

std::string_view mark_name(Mark m);

struct Encoding {
  std::string_view field;  // empty for a count aggregate
  std::string_view type;   // quantitative | ordinal | nominal
  std::string_view title;
  Scale scale = Scale::kLinear;
};

struct ChartDescriptor {
  ChartId id;
  int index;  // 1-based display order
  std::string_view name;
  std::string_view title;
  Mark mark;
  Encoding x;
  Encoding y;
  ColorKind color;
  std::optional<std::string_view> link_group;
};

/// The twelve charts in display order.
const std::array<ChartDescriptor, 12>& chart_catalog();
const ChartDescriptor& descriptor(ChartId id);

/// Accepts a catalog name ("if_vs_cost"), "chart_<n>" or "<n>".
std::optional<ChartId> parse_chart_id(std::string_view text);

/// Tooltip payload carried by every data row, in display order.
const std::array<std::string_view, 9>& tooltip_fields();

struct Bin {
  double lo;
  double hi;
  std::size_t count;

  bool operator==(const Bin&) const = default;
};

/// Equal-width bins over [min, max]; each bin is [lo, hi) except the last,
/// which is closed. When every value is equal a single bin holds them all.
/// Throws Error(kEmptyInput) for no values, kInvalidArgument for
/// bin_count == 0 or a non-finite value.
std::vector<Bin> histogram_bins(std::span<const double> values, std::size_t bin_count);

struct SubjectAssignment {
  std::string subject;
  std::size_t row;  // package row index

  bool operator==(const SubjectAssignment&) const = default;
};

inline constexpr std::string_view kUnclassified = "Unclassified";

/// One entry per (record, subject); subject-less records map to
/// "Unclassified".
std::vector<SubjectAssignment> explode_subjects(const View& view);

struct CpuBox {
  std::size_t row;
  int stack;  // 1-based height within the bin
  SubscribedStatus status;
};

struct CpuBin {
  double lo;
  double hi;
  std::vector<CpuBox> boxes;
};

struct CpuBoxGrid {
  double bin_width = 0;
  std::vector<CpuBin> bins;
  std::size_t undefined = 0;  // records without a cost per use
};

/// Bins of width `bin_width` starting at the smallest cpu in the view; the
/// last bin is closed. Boxes stack by ascending cpu_rank, then key.
/// Throws Error(kInvalidArgument) unless bin_width > 0.
CpuBoxGrid cpu_boxes(const View& view, double bin_width);

struct ChartSpec {
  ChartDescriptor descriptor;
  nlohmann::json rows = nlohmann::json::array();
  std::size_t excluded_undefined = 0;     // no value for an encoded metric
  std::size_t excluded_nonpositive = 0;   // dropped from a log axis
  std::vector<Bin> bins;                  // charts 3 and 11
  std::optional<double> bin_width;

  std::size_t row_count() const { return rows.size(); }
  nlohmann::json to_json() const;
};

/// Builds one chart over `view`. `metrics` must be computed over the view's
/// parent package (index-aligned with its records).
/// Throws Error(kInvalidArgument) when metrics do not match the package.
ChartSpec build_chart(const View& view, ChartId id, const PackageMetrics& metrics);

/// Throws Error(kUnknownChart) when `id` names no catalog entry.
ChartSpec build_chart(const View& view, std::string_view id, const PackageMetrics& metrics);

nlohmann::json catalog_json();

}  // namespace unsubx
