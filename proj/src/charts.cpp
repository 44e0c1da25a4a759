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
#include "unsubx/charts.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace unsubx {

using nlohmann::json;

namespace {

constexpr std::string_view kQuant = "quantitative";
constexpr std::string_view kOrdinal = "ordinal";
constexpr std::string_view kNominal = "nominal";

constexpr Encoding kCostX{"price", kQuant, "Subscription cost (USD)"};
constexpr Encoding kUsageY{"usage", kQuant, "Weighted usage"};

// Axis orientation is fixed here: cost on x and usage on y for the
// usage/cost plots.
const std::array<ChartDescriptor, 12> kCatalog = {{
    {ChartId::kUsageVsCostByStatus, 1, "usage_vs_cost_by_status",
     "Weighted usage vs. cost, by Subscribed status", Mark::kPoint, kCostX, kUsageY,
     ColorKind::kStatusPalette, std::nullopt},
    {ChartId::kUsageVsCostByCpuRank, 2, "usage_vs_cost_by_cpu_rank",
     "Weighted usage vs. cost, by CPU rank", Mark::kPoint, kCostX, kUsageY,
     ColorKind::kCpuRankGradient, std::nullopt},
    {ChartId::kAuthorshipHistogram, 3, "authorship_histogram", "Authorship count distribution",
     Mark::kBar, {"authorships", kQuant, "Authorships per year"}, {"", kQuant, "Titles"},
     ColorKind::kNone, std::nullopt},
    {ChartId::kCitationsVsDownloads, 4, "citations_vs_downloads", "Citations vs. downloads",
     Mark::kPoint, {"downloads", kQuant, "Downloads"}, {"citations", kQuant, "Citations"},
     ColorKind::kStatusPalette, std::nullopt},
    {ChartId::kUsageVsDownloads, 5, "usage_vs_downloads", "Weighted usage vs. downloads",
     Mark::kPoint, {"downloads", kQuant, "Downloads"}, kUsageY, ColorKind::kStatusPalette,
     "usage_components"},
    {ChartId::kUsageVsCitations, 6, "usage_vs_citations", "Weighted usage vs. citations",
     Mark::kPoint, {"citations", kQuant, "Citations"}, kUsageY, ColorKind::kStatusPalette,
     "usage_components"},
    {ChartId::kUsageVsAuthorships, 7, "usage_vs_authorships", "Weighted usage vs. authorships",
     Mark::kPoint, {"authorships", kQuant, "Authorships"}, kUsageY, ColorKind::kStatusPalette,
     "usage_components"},
    {ChartId::kUsageVsOaPercent, 8, "usage_vs_oa_percent",
     "Weighted usage vs. Open Access percentage", Mark::kPoint,
     {"oa_percent", kQuant, "Open Access (%)"}, kUsageY, ColorKind::kStatusPalette,
     "usage_components"},
    {ChartId::kIfVsCost, 9, "if_vs_cost", "Instant Fill % vs. cost", Mark::kPoint, kCostX,
     {"if_percent", kQuant, "Instant Fill (percentage points)"}, ColorKind::kStatusPalette,
     std::nullopt},
    {ChartId::kNormalizedIfVsLogCost, 10, "normalized_if_vs_log_cost",
     "Normalized Instant Fill % vs. cost", Mark::kPoint,
     {"price", kQuant, "Subscription cost (USD, log scale)", Scale::kLog},
     {"normalized_if_cost", kQuant, "Cost per Instant Fill point (USD)"},
     ColorKind::kStatusPalette, std::nullopt},
    {ChartId::kCpuHistogramBoxes, 11, "cpu_histogram_boxes", "Titles by cost per use",
     Mark::kRect, {"cpu_bin_lo", kOrdinal, "Cost per use bin (USD, lower edge)"},
     {"stack", kOrdinal, "Titles"}, ColorKind::kStatusPalette, std::nullopt},
    {ChartId::kSubjectChart, 12, "subject_chart", "Journals by subject area", Mark::kPoint,
     {"cpu_rank", kQuant, "CPU rank"}, {"subject", kNominal, "Subject area"},
     ColorKind::kStatusPalette, std::nullopt},
}};

const std::array<std::string_view, 9> kTooltip = {"title",    "downloads", "citations",
                                                   "authorships", "usage", "price",
                                                   "cpu_rank", "oa_percent", "status"};

const std::map<std::string_view, std::string_view> kTooltipTitles = {
    {"title", "Title"},        {"downloads", "Downloads"},   {"citations", "Citations"},
    {"authorships", "Authorships"}, {"usage", "Weighted usage"}, {"price", "Cost (USD)"},
    {"cpu_rank", "CPU rank"},  {"oa_percent", "Open Access (%)"}, {"status", "Subscribed"}};

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json base_row(const JournalRecord& rec, const RecordMetrics& m) {
  return json{{"title", rec.title},
              {"downloads", rec.downloads},
              {"citations", rec.citations},
              {"authorships", rec.authorships},
              {"usage", m.usage},
              {"price", rec.price},
              {"cpu_rank", m.cpu_rank},
              {"oa_percent", rec.oa_percent},
              {"status", status_label(rec.subscribed)}};
}

// Bin index for `v` given edges lo + i*width; the last bin is closed.
std::size_t bin_index(double v, double lo, double width, std::size_t count) {
  if (count == 1 || !(width > 0)) return 0;
  auto k = static_cast<std::size_t>(std::clamp(std::floor((v - lo) / width), 0.0,
                                               static_cast<double>(count - 1)));
  while (k > 0 && v < lo + static_cast<double>(k) * width) --k;
  while (k + 1 < count && v >= lo + static_cast<double>(k + 1) * width) ++k;
  return k;
}

json encoding_json(const Encoding& e) {
  json out{{"type", e.type}, {"title", e.title}};
  if (e.field.empty()) {
    out["aggregate"] = "count";
  } else {
    out["field"] = e.field;
  }
  if (e.type == kQuant && !e.field.empty()) {
    out["scale"] = {{"type", e.scale == Scale::kLog ? "log" : "linear"}};
  }
  return out;
}

}  // namespace

std::string_view mark_name(Mark m) {
  switch (m) {
    case Mark::kPoint: return "point";
    case Mark::kBar: return "bar";
    case Mark::kRect: return "rect";
  }
  return "point";
}

const std::array<ChartDescriptor, 12>& chart_catalog() { return kCatalog; }

const ChartDescriptor& descriptor(ChartId id) { return kCatalog[static_cast<std::size_t>(id)]; }

std::optional<ChartId> parse_chart_id(std::string_view text) {
  for (const auto& d : kCatalog) {
    if (d.name == text) return d.id;
  }
  std::string_view digits = text;
  if (digits.substr(0, 6) == "chart_") digits.remove_prefix(6);
  if (digits.empty() || digits.size() > 2) return std::nullopt;
  int n = 0;
  for (char c : digits) {
    if (c < '0' || c > '9') return std::nullopt;
    n = n * 10 + (c - '0');
  }
  if (n < 1 || n > 12) return std::nullopt;
  return kCatalog[n - 1].id;
}

const std::array<std::string_view, 9>& tooltip_fields() { return kTooltip; }

std::vector<Bin> histogram_bins(std::span<const double> values, std::size_t bin_count) {
  if (bin_count == 0) throw Error(ErrorCode::kInvalidArgument, "bin_count must be at least 1");
  if (values.empty()) throw Error(ErrorCode::kEmptyInput, "histogram of no values");
  for (double v : values) {
    if (!std::isfinite(v)) throw Error(ErrorCode::kInvalidArgument, "histogram value is not finite");
  }
  const auto [min_it, max_it] = std::minmax_element(values.begin(), values.end());
  const double lo = *min_it;
  const double hi = *max_it;
  if (lo == hi) return {Bin{lo, hi, values.size()}};

  const double width = (hi - lo) / static_cast<double>(bin_count);
  std::vector<Bin> bins(bin_count);
  for (std::size_t i = 0; i < bin_count; ++i) {
    bins[i].lo = lo + static_cast<double>(i) * width;
    bins[i].hi = i + 1 == bin_count ? hi : lo + static_cast<double>(i + 1) * width;
    bins[i].count = 0;
  }
  for (double v : values) ++bins[bin_index(v, lo, width, bin_count)].count;
  return bins;
}

std::vector<SubjectAssignment> explode_subjects(const View& view) {
  std::vector<SubjectAssignment> out;
  for (auto row : view.rows) {
    const auto& rec = view.package->records[row];
    if (rec.subjects.empty()) {
      out.push_back({std::string(kUnclassified), row});
      continue;
    }
    for (const auto& s : rec.subjects) out.push_back({s, row});
  }
  return out;
}

CpuBoxGrid cpu_boxes(const View& view, double bin_width) {
  if (!(bin_width > 0) || !std::isfinite(bin_width)) {
    throw Error(ErrorCode::kInvalidArgument, "bin_width must be positive");
  }
  CpuBoxGrid grid;
  grid.bin_width = bin_width;

  std::vector<std::pair<std::size_t, double>> defined;
  for (auto row : view.rows) {
    auto cpu = effective_cpu(view.package->records[row]);
    if (cpu) {
      defined.emplace_back(row, *cpu);
    } else {
      ++grid.undefined;
    }
  }
  if (defined.empty()) return grid;

  double lo = defined.front().second, hi = lo;
  for (const auto& [row, cpu] : defined) {
    lo = std::min(lo, cpu);
    hi = std::max(hi, cpu);
  }
  // Bins needed to cover [lo, hi]; a width equal to the extent gives one.
  const double span = (hi - lo) / bin_width;
  auto count = static_cast<std::size_t>(std::max(1.0, std::ceil(span * (1 - 1e-12))));
  grid.bins.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    grid.bins[i].lo = lo + static_cast<double>(i) * bin_width;
    grid.bins[i].hi = lo + static_cast<double>(i + 1) * bin_width;
  }
  for (const auto& [row, cpu] : defined) {
    grid.bins[bin_index(cpu, lo, bin_width, count)].boxes.push_back(
        CpuBox{row, 0, view.package->records[row].subscribed});
  }
  const auto& recs = view.package->records;
  for (auto& bin : grid.bins) {
    std::sort(bin.boxes.begin(), bin.boxes.end(), [&](const CpuBox& a, const CpuBox& b) {
      const auto& ra = recs[a.row];
      const auto& rb = recs[b.row];
      const int rank_a = ra.cpu_rank.value_or(INT32_MAX);
      const int rank_b = rb.cpu_rank.value_or(INT32_MAX);
      if (rank_a != rank_b) return rank_a < rank_b;
      return ra.key < rb.key;
    });
    for (std::size_t i = 0; i < bin.boxes.size(); ++i) bin.boxes[i].stack = static_cast<int>(i + 1);
  }
  return grid;
}

namespace {

void add_status_rows(ChartSpec& spec, const View& view, const PackageMetrics& metrics) {
  for (auto row : view.rows) {
    spec.rows.push_back(base_row(view.package->records[row], metrics.records[row]));
  }
}

void build_authorship_histogram(ChartSpec& spec, const View& view, const PackageMetrics& metrics) {
  add_status_rows(spec, view, metrics);
  if (view.empty()) return;
  std::vector<double> values;
  values.reserve(view.size());
  for (std::size_t i = 0; i < view.size(); ++i) values.push_back(view.record(i).authorships);
  spec.bins = histogram_bins(values, kAuthorshipBins);
  spec.bin_width = spec.bins.size() > 1 ? spec.bins[0].hi - spec.bins[0].lo : 0.0;
}

void build_if_chart(ChartSpec& spec, const View& view, const PackageMetrics& metrics) {
  for (auto row : view.rows) {
    const auto& m = metrics.records[row];
    json r = base_row(view.package->records[row], m);
    r["if_percent"] = m.if_percent;
    spec.rows.push_back(std::move(r));
  }
}

void build_normalized_if_chart(ChartSpec& spec, const View& view, const PackageMetrics& metrics) {
  for (auto row : view.rows) {
    const auto& rec = view.package->records[row];
    const auto& m = metrics.records[row];
    if (!m.normalized_if_cost) {
      ++spec.excluded_undefined;
      continue;
    }
    if (!(rec.price > 0)) {
      ++spec.excluded_nonpositive;
      continue;
    }
    json r = base_row(rec, m);
    r["if_percent"] = m.if_percent;
    r["normalized_if_cost"] = *m.normalized_if_cost;
    spec.rows.push_back(std::move(r));
  }
}

void build_cpu_boxes(ChartSpec& spec, const View& view, const PackageMetrics& metrics) {
  double lo = INFINITY, hi = -INFINITY;
  for (auto row : view.rows) {
    if (auto cpu = effective_cpu(view.package->records[row])) {
      lo = std::min(lo, *cpu);
      hi = std::max(hi, *cpu);
    }
  }
  const double width = lo < hi ? (hi - lo) / static_cast<double>(kCpuBoxBins) : 1.0;
  const CpuBoxGrid grid = cpu_boxes(view, width);
  spec.excluded_undefined = grid.undefined;
  spec.bin_width = grid.bin_width;
  for (std::size_t b = 0; b < grid.bins.size(); ++b) {
    const auto& bin = grid.bins[b];
    spec.bins.push_back(Bin{bin.lo, bin.hi, bin.boxes.size()});
    for (const auto& box : bin.boxes) {
      const auto& rec = view.package->records[box.row];
      json r = base_row(rec, metrics.records[box.row]);
      r["cpu"] = optional_number(effective_cpu(rec));
      r["cpu_bin"] = b;
      r["cpu_bin_lo"] = bin.lo;
      r["cpu_bin_hi"] = bin.hi;
      r["stack"] = box.stack;
      spec.rows.push_back(std::move(r));
    }
  }
}

void build_subject_chart(ChartSpec& spec, const View& view, const PackageMetrics& metrics) {
  for (const auto& a : explode_subjects(view)) {
    json r = base_row(view.package->records[a.row], metrics.records[a.row]);
    r["subject"] = a.subject;
    spec.rows.push_back(std::move(r));
  }
}

}  // namespace

ChartSpec build_chart(const View& view, ChartId id, const PackageMetrics& metrics) {
  if (view.package == nullptr || metrics.records.size() != view.package->n()) {
    throw Error(ErrorCode::kInvalidArgument, "metrics were not computed over the view's package");
  }
  ChartSpec spec;
  spec.descriptor = descriptor(id);
  switch (id) {
    case ChartId::kAuthorshipHistogram: build_authorship_histogram(spec, view, metrics); break;
    case ChartId::kIfVsCost: build_if_chart(spec, view, metrics); break;
    case ChartId::kNormalizedIfVsLogCost: build_normalized_if_chart(spec, view, metrics); break;
    case ChartId::kCpuHistogramBoxes: build_cpu_boxes(spec, view, metrics); break;
    case ChartId::kSubjectChart: build_subject_chart(spec, view, metrics); break;
    default: add_status_rows(spec, view, metrics); break;
  }
  return spec;
}

ChartSpec build_chart(const View& view, std::string_view id, const PackageMetrics& metrics) {
  auto parsed = parse_chart_id(id);
  if (!parsed) throw Error(ErrorCode::kUnknownChart, "unknown chart id: " + std::string(id));
  return build_chart(view, *parsed, metrics);
}

json ChartSpec::to_json() const {
  const auto& d = descriptor;
  json doc;
  doc["$schema"] = kVegaLiteSchemaUrl;
  doc["title"] = d.title;
  doc["data"] = {{"values", rows}};

  json mark{{"type", mark_name(d.mark)}, {"tooltip", true}};
  if (d.mark == Mark::kPoint) mark["filled"] = true;
  doc["mark"] = mark;

  json enc;
  enc["x"] = encoding_json(d.x);
  enc["y"] = encoding_json(d.y);
  if (d.id == ChartId::kAuthorshipHistogram) {
    if (bins.size() > 1) {
      enc["x"]["bin"] = {{"extent", {bins.front().lo, bins.back().hi}}, {"step", *bin_width}};
    } else {
      enc["x"]["bin"] = {{"maxbins", kAuthorshipBins}};
    }
  }
  if (d.id == ChartId::kCpuHistogramBoxes) enc["y"]["sort"] = "descending";
  switch (d.color) {
    case ColorKind::kStatusPalette: {
      json domain = json::array(), range = json::array();
      for (auto s : kAllStatuses) {
        domain.push_back(status_label(s));
        range.push_back(kStatusColors[index_of(s)]);
      }
      enc["color"] = {{"field", "status"},
                      {"type", kNominal},
                      {"title", "Subscribed"},
                      {"scale", {{"domain", domain}, {"range", range}}}};
      break;
    }
    case ColorKind::kCpuRankGradient:
      // viridis runs dark (rank 1, most economical) to light.
      enc["color"] = {{"field", "cpu_rank"},
                      {"type", kQuant},
                      {"title", "CPU rank"},
                      {"scale", {{"scheme", "viridis"}}}};
      break;
    case ColorKind::kNone: break;
  }
  json tooltip = json::array();
  for (auto f : kTooltip) {
    const bool text = f == "title" || f == "status";
    tooltip.push_back({{"field", f}, {"type", text ? kNominal : kQuant}, {"title", kTooltipTitles.at(f)}});
  }
  enc["tooltip"] = tooltip;
  doc["encoding"] = enc;

  if (d.mark == Mark::kPoint) {
    doc["params"] = json::array(
        {{{"name", d.link_group ? std::string(*d.link_group) : "zoom_" + std::string(d.name)},
          {"select", {{"type", "interval"}}},
          {"bind", "scales"}}});
  }

  json meta;
  meta["chart_id"] = d.name;
  meta["index"] = d.index;
  meta["spec_version"] = kChartSpecVersion;
  meta["link_group"] = d.link_group ? json(*d.link_group) : json(nullptr);
  meta["row_count"] = rows.size();
  meta["excluded_rows"] = {{"undefined", excluded_undefined}, {"non_positive", excluded_nonpositive}};
  if (d.id == ChartId::kAuthorshipHistogram || d.id == ChartId::kCpuHistogramBoxes) {
    json jbins = json::array();
    std::size_t total = 0;
    for (const auto& b : bins) {
      jbins.push_back({{"lo", b.lo}, {"hi", b.hi}, {"count", b.count}});
      total += b.count;
    }
    meta["bins"] = jbins;
    meta["bin_width"] = bin_width ? json(*bin_width) : json(nullptr);
    meta["total_count"] = total;
  }
  doc["usermeta"] = meta;
  return doc;
}

json catalog_json() {
  json out = json::array();
  for (const auto& d : kCatalog) {
    out.push_back({{"index", d.index},
                   {"chart_id", d.name},
                   {"title", d.title},
                   {"mark", mark_name(d.mark)},
                   {"x", encoding_json(d.x)},
                   {"y", encoding_json(d.y)},
                   {"color", d.color == ColorKind::kStatusPalette   ? "status"
                             : d.color == ColorKind::kCpuRankGradient ? "cpu_rank"
                                                                      : "none"},
                   {"link_group", d.link_group ? json(*d.link_group) : json(nullptr)}});
  }
  return out;
}

}  // namespace unsubx
