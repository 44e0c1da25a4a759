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

#include <fstream>
#include <map>
#include <set>

#include <gtest/gtest.h>

#include "fixture_oracle.hpp"
#include "generators.hpp"
#include "schema_validator.hpp"
#include "unsubx/ingest.hpp"

namespace unsubx {
namespace {

namespace fx = testing::fixture;
using nlohmann::json;

Package fixture() {
  std::ifstream in(std::string(UNSUBX_TEST_DATA_DIR) + "/fixture10.csv", std::ios::binary);
  return settle(parse_export(in), UsageSource::kExported, Weights::defaults());
}

const testing::SchemaValidator& schema() {
  static const auto v = testing::SchemaValidator::from_file(UNSUBX_SCHEMA_PATH);
  return v;
}

TEST(Catalog, TwelveChartsInOrder) {
  const auto& catalog = chart_catalog();
  ASSERT_EQ(catalog.size(), 12u);
  std::set<std::string_view> names;
  for (std::size_t i = 0; i < catalog.size(); ++i) {
    EXPECT_EQ(catalog[i].index, static_cast<int>(i + 1));
    EXPECT_EQ(static_cast<std::size_t>(catalog[i].id), i);
    names.insert(catalog[i].name);
  }
  EXPECT_EQ(names.size(), 12u);
  EXPECT_EQ(catalog_json().size(), 12u);
}

TEST(Catalog, LinkedUsageComponentPlots) {
  const auto& catalog = chart_catalog();
  for (std::size_t i = 0; i < catalog.size(); ++i) {
    const bool linked = i >= 4 && i <= 7;
    ASSERT_EQ(catalog[i].link_group.has_value(), linked) << catalog[i].name;
    if (linked) { EXPECT_EQ(*catalog[i].link_group, "usage_components"); }
  }
}

TEST(Catalog, NormalizedChartUsesLogX) {
  const auto& d = descriptor(ChartId::kNormalizedIfVsLogCost);
  EXPECT_EQ(d.index, 10);
  EXPECT_EQ(d.x.scale, Scale::kLog);
  EXPECT_EQ(d.x.field, "price");
  for (const auto& other : chart_catalog()) {
    if (other.id != d.id) { EXPECT_EQ(other.x.scale, Scale::kLinear) << other.name; }
  }
}

TEST(Catalog, ParseChartId) {
  EXPECT_EQ(parse_chart_id("if_vs_cost"), ChartId::kIfVsCost);
  EXPECT_EQ(parse_chart_id("chart_1"), ChartId::kUsageVsCostByStatus);
  EXPECT_EQ(parse_chart_id("12"), ChartId::kSubjectChart);
  EXPECT_EQ(parse_chart_id("chart_99"), std::nullopt);
  EXPECT_EQ(parse_chart_id("chart_0"), std::nullopt);
  EXPECT_EQ(parse_chart_id(""), std::nullopt);
  EXPECT_EQ(parse_chart_id("pie"), std::nullopt);
}

TEST(HistogramBins, FixtureAuthorshipsMatchOracle) {
  const Package pkg = fixture();
  std::vector<double> values;
  for (const auto& r : pkg.records) values.push_back(r.authorships);
  const auto bins = histogram_bins(values, 10);
  ASSERT_EQ(bins.size(), 10u);
  for (std::size_t i = 0; i < 10; ++i) EXPECT_EQ(bins[i].count, fx::kAuthorshipBins10[i]) << i;
  EXPECT_EQ(bins.front().lo, 0.0);
  EXPECT_EQ(bins.back().hi, 4.0);
}

TEST(HistogramBins, EdgesAndDegenerateCases) {
  const std::vector<double> v = {0, 1, 2, 3, 4};
  const auto bins = histogram_bins(v, 4);
  EXPECT_EQ(bins[0].count, 1u);
  EXPECT_EQ(bins[3].count, 2u);  // last bin is closed
  EXPECT_EQ(histogram_bins(std::vector<double>{5, 5, 5}, 20), (std::vector<Bin>{{5, 5, 3}}));
  EXPECT_THROW(histogram_bins(std::vector<double>{}, 3), Error);
  EXPECT_THROW(histogram_bins(v, 0), Error);
  EXPECT_THROW(histogram_bins(std::vector<double>{1, NAN}, 3), Error);
}

TEST(HistogramBins, PropertyCountsConserved) {
  testing::Rng rng(31);
  for (int i = 0; i < 500; ++i) {
    std::vector<double> v(testing::pick(rng, 1, 200));
    for (auto& x : v) x = testing::grid(rng, 50, 0.25);
    const std::size_t k = testing::pick(rng, 1, 30);
    const auto bins = histogram_bins(v, k);
    std::size_t total = 0;
    for (std::size_t b = 0; b < bins.size(); ++b) {
      total += bins[b].count;
      if (b > 0) { ASSERT_EQ(bins[b].lo, bins[b - 1].hi); }
    }
    ASSERT_EQ(total, v.size());
  }
}

TEST(ExplodeSubjects, FixtureMatchesOracle) {
  const Package pkg = fixture();
  const auto pairs = explode_subjects(whole(pkg));
  EXPECT_EQ(pairs.size(), fx::kSubjectPairs);
  std::map<std::string, std::size_t> counts;
  for (const auto& p : pairs) ++counts[p.subject];
  ASSERT_EQ(counts.size(), fx::kSubjects.size());
  for (const auto& [subject, count] : fx::kSubjects) EXPECT_EQ(counts[std::string(subject)], count) << subject;
}

TEST(CpuBoxes, FixtureMatchesOracle) {
  const Package pkg = fixture();
  double lo = INFINITY, hi = -INFINITY;
  for (const auto& r : pkg.records) {
    if (auto c = effective_cpu(r)) {
      lo = std::min(lo, *c);
      hi = std::max(hi, *c);
    }
  }
  const auto grid = cpu_boxes(whole(pkg), (hi - lo) / 10);
  ASSERT_EQ(grid.bins.size(), 10u);
  EXPECT_EQ(grid.undefined, fx::kCpuUndefined);
  for (std::size_t i = 0; i < 10; ++i) EXPECT_EQ(grid.bins[i].boxes.size(), fx::kCpuBoxes10[i]) << i;
  // Stacks run 1..n in ascending rank.
  const auto& first = grid.bins[0].boxes;
  for (std::size_t i = 0; i < first.size(); ++i) {
    EXPECT_EQ(first[i].stack, static_cast<int>(i + 1));
    if (i > 0) { EXPECT_LT(*pkg.records[first[i - 1].row].cpu_rank, *pkg.records[first[i].row].cpu_rank); }
  }
  EXPECT_THROW(cpu_boxes(whole(pkg), 0), Error);
}

TEST(BuildChart, FixtureRowCounts) {
  const Package pkg = fixture();
  const auto m = evaluate(pkg);
  const View all = whole(pkg);
  for (const auto& d : chart_catalog()) {
    const auto spec = build_chart(all, d.id, m);
    switch (d.id) {
      case ChartId::kNormalizedIfVsLogCost:
        EXPECT_EQ(spec.row_count(), 8u);
        EXPECT_EQ(spec.excluded_undefined, 2u);
        break;
      case ChartId::kCpuHistogramBoxes:
        EXPECT_EQ(spec.row_count(), 9u);
        EXPECT_EQ(spec.excluded_undefined, 1u);
        break;
      case ChartId::kSubjectChart: EXPECT_EQ(spec.row_count(), fx::kSubjectPairs); break;
      default: EXPECT_EQ(spec.row_count(), fx::kRows) << d.name;
    }
  }
}

TEST(BuildChart, RowsCarryTooltipFields) {
  const Package pkg = fixture();
  const auto doc = build_chart(whole(pkg), ChartId::kUsageVsCostByStatus, evaluate(pkg)).to_json();
  const auto& row = doc["data"]["values"][0];
  for (auto f : tooltip_fields()) EXPECT_TRUE(row.contains(std::string(f))) << f;
  EXPECT_EQ(row["title"], "Alpha Letters");
  EXPECT_EQ(row["status"], "TRUE");
  EXPECT_EQ(doc["encoding"]["tooltip"].size(), tooltip_fields().size());
}

TEST(BuildChart, StatusPaletteAndGradient) {
  const Package pkg = fixture();
  const auto m = evaluate(pkg);
  const auto status = build_chart(whole(pkg), ChartId::kUsageVsCostByStatus, m).to_json();
  EXPECT_EQ(status["encoding"]["color"]["scale"]["domain"], json({"TRUE", "FALSE", "MAYBE", "BLANK"}));
  EXPECT_EQ(status["encoding"]["color"]["scale"]["range"], json({"blue", "red", "green", "gray"}));
  const auto gradient = build_chart(whole(pkg), ChartId::kUsageVsCostByCpuRank, m).to_json();
  EXPECT_EQ(gradient["encoding"]["color"]["field"], "cpu_rank");
  EXPECT_EQ(gradient["encoding"]["color"]["type"], "quantitative");
}

TEST(BuildChart, LinkedChartsShareSelectionName) {
  const Package pkg = fixture();
  const auto m = evaluate(pkg);
  std::set<std::string> names;
  for (int i = 5; i <= 8; ++i) {
    const auto doc = build_chart(whole(pkg), "chart_" + std::to_string(i), m).to_json();
    EXPECT_EQ(doc["usermeta"]["link_group"], "usage_components");
    names.insert(doc["params"][0]["name"].get<std::string>());
  }
  EXPECT_EQ(names.size(), 1u);
  const auto log_doc = build_chart(whole(pkg), ChartId::kNormalizedIfVsLogCost, m).to_json();
  EXPECT_EQ(log_doc["encoding"]["x"]["scale"]["type"], "log");
}

TEST(BuildChart, HistogramMetadata) {
  const Package pkg = load_sample();
  const auto settled = settle(pkg, UsageSource::kExported, Weights::defaults());
  const auto m = evaluate(settled);
  const auto doc = build_chart(whole(settled), ChartId::kAuthorshipHistogram, m).to_json();
  EXPECT_EQ(doc["usermeta"]["bins"].size(), kAuthorshipBins);
  EXPECT_EQ(doc["usermeta"]["total_count"], 431);
  const auto boxes = build_chart(whole(settled), ChartId::kCpuHistogramBoxes, m).to_json();
  EXPECT_EQ(boxes["usermeta"]["bins"].size(), kCpuBoxBins);
  EXPECT_EQ(boxes["usermeta"]["total_count"], boxes["usermeta"]["row_count"]);
}

TEST(BuildChart, Errors) {
  const Package pkg = fixture();
  const auto m = evaluate(pkg);
  try {
    build_chart(whole(pkg), std::string_view("chart_99"), m);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnknownChart);
  }
  try {
    build_chart(whole(pkg), ChartId::kIfVsCost, PackageMetrics{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidArgument);
  }
}

TEST(BuildChart, EmptyViewStillValid) {
  const Package pkg = fixture();
  const auto m = evaluate(pkg);
  for (const auto& d : chart_catalog()) {
    const auto doc = build_chart(View{&pkg, {}}, d.id, m).to_json();
    EXPECT_EQ(doc["usermeta"]["row_count"], 0);
    EXPECT_TRUE(schema().validate(doc).empty()) << d.name;
  }
}

TEST(Schema, EveryChartValidatesOnFixtureAndSample) {
  for (const Package& pkg : {fixture(), settle(load_sample(), UsageSource::kExported, Weights::defaults())}) {
    const auto m = evaluate(pkg);
    for (const auto& d : chart_catalog()) {
      const auto errors = schema().validate(build_chart(whole(pkg), d.id, m).to_json());
      EXPECT_TRUE(errors.empty()) << d.name << ": " << (errors.empty() ? "" : errors.front());
    }
  }
}

TEST(Schema, ValidatorRejectsBrokenDocuments) {
  const Package pkg = fixture();
  auto doc = build_chart(whole(pkg), ChartId::kIfVsCost, evaluate(pkg)).to_json();
  ASSERT_TRUE(schema().validate(doc).empty());
  auto bad = doc;
  bad["usermeta"].erase("chart_id");
  EXPECT_FALSE(schema().validate(bad).empty());
  bad = doc;
  bad["mark"]["type"] = "arc";
  EXPECT_FALSE(schema().validate(bad).empty());
  bad = doc;
  bad["data"]["values"][0]["status"] = "YES";
  EXPECT_FALSE(schema().validate(bad).empty());
  bad = doc;
  bad["encoding"]["x"]["scale"]["type"] = "sqrt";
  EXPECT_FALSE(schema().validate(bad).empty());
  bad = doc;
  bad["extra"] = 1;
  EXPECT_FALSE(schema().validate(bad).empty());
}

TEST(Charts, PropertyFilteringNeverAddsRows) {
  testing::Rng rng(32);
  for (int i = 0; i < 100; ++i) {
    const Package pkg = settle(testing::random_live_package(rng), UsageSource::kExported, Weights::defaults());
    const auto m = evaluate(pkg);
    FilterSpec spec;
    spec.range(FilterMetric::kUsage) = Range{testing::uniform(rng, 0, 2000), INFINITY};
    const View narrow = apply(pkg, spec);
    for (const auto& d : chart_catalog()) {
      const auto full = build_chart(whole(pkg), d.id, m);
      const auto part = build_chart(narrow, d.id, m);
      ASSERT_LE(part.row_count(), full.row_count()) << d.name;
      ASSERT_TRUE(schema().validate(part.to_json()).empty()) << d.name;
    }
  }
}

}  // namespace
}  // namespace unsubx
