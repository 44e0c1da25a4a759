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
#include "unsubx/filters.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>

#include <gtest/gtest.h>

#include "fixture_oracle.hpp"
#include "filter_gen.hpp"
#include "generators.hpp"
#include "unsubx/ingest.hpp"
#include "unsubx/metrics.hpp"

namespace unsubx {
namespace {

namespace fx = testing::fixture;
using testing::Rng;
using Query = std::multimap<std::string, std::string>;
using testing::conjunction;
using testing::random_spec;
using testing::subset;
using testing::tighten;

Package fixture() {
  std::ifstream in(std::string(UNSUBX_TEST_DATA_DIR) + "/fixture10.csv", std::ios::binary);
  return parse_export(in);
}

TEST(FilterSpec, DefaultSelectsEverything) {
  const Package pkg = load_sample();
  EXPECT_EQ(apply(pkg, FilterSpec{}), whole(pkg));
  EXPECT_TRUE(FilterSpec{}.statuses.all());
}

TEST(FilterSpec, FromQueryParsesRangesAndStatuses) {
  const auto spec = FilterSpec::from_query(
      Query{{"price_min", "100"}, {"price_max", "2e3"}, {"usage_max", "50"}, {"statuses", "TRUE,maybe,BLANK"},
            {"unrelated", "x"}});
  EXPECT_EQ(spec.range(FilterMetric::kPrice), (Range{100, 2000}));
  EXPECT_EQ(spec.range(FilterMetric::kUsage)->hi, 50);
  EXPECT_TRUE(std::isinf(spec.range(FilterMetric::kUsage)->lo));
  EXPECT_FALSE(spec.range(FilterMetric::kDownloads).has_value());
  EXPECT_EQ(spec.statuses, StatusSet::of({SubscribedStatus::kTrue, SubscribedStatus::kMaybe, SubscribedStatus::kBlank}));
}

TEST(FilterSpec, FromQueryRejectsBadInput) {
  try {
    FilterSpec::from_query(Query{{"price_min", "10"}, {"price_max", "5"}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidRange);
  }
  try {
    FilterSpec::from_query(Query{{"usage_min", "lots"}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidArgument);
  }
  EXPECT_THROW(FilterSpec::from_query(Query{{"statuses", "TRUE,YES"}}), Error);
  EXPECT_THROW(FilterSpec::from_query(Query{{"price_min", "nan"}}), Error);
}

TEST(FilterSpec, QueryRoundTrip) {
  Rng rng(21);
  const Package pkg = load_sample();
  for (int i = 0; i < 200; ++i) {
    const auto spec = random_spec(rng, pkg);
    Query q;
    for (auto& [k, v] : spec.to_query()) q.emplace(k, v);
    ASSERT_EQ(FilterSpec::from_query(q), spec);
  }
}

TEST(FilterSpec, CheckRejectsInvertedRange) {
  FilterSpec spec;
  spec.range(FilterMetric::kUsage) = Range{5, 1};
  EXPECT_THROW(spec.check(), Error);
  EXPECT_THROW(apply(load_sample(), spec), Error);
}

TEST(Apply, ClosedRangesAndOrder) {
  const Package pkg = fixture();
  FilterSpec spec;
  spec.range(FilterMetric::kPrice) = Range{600, 1200};
  const auto view = apply(pkg, spec);
  std::vector<std::string> keys;
  for (std::size_t i = 0; i < view.size(); ++i) keys.push_back(view.record(i).key);
  EXPECT_EQ(keys, (std::vector<std::string>{"1111-1111", "beta-annals-1", "2222-2222", "delta-quarterly-1",
                                            "theta-bulletin-1"}));
}

TEST(Apply, StatusFilter) {
  const Package pkg = fixture();
  FilterSpec spec;
  spec.statuses = StatusSet::of({SubscribedStatus::kBlank});
  const auto view = apply(pkg, spec);
  ASSERT_EQ(view.size(), 2u);
  EXPECT_EQ(view.record(0).key, "3333-3333");
  EXPECT_EQ(view.record(1).key, "theta-bulletin-1");
  spec.statuses = StatusSet::none();
  EXPECT_TRUE(apply(pkg, spec).empty());
}

TEST(Apply, UndefinedValueFailsAConstrainedMetric) {
  Package pkg = fixture();
  pkg.records[0].cpu_rank.reset();
  FilterSpec spec;
  spec.range(FilterMetric::kCpuRank) = Range{-INFINITY, INFINITY};
  EXPECT_EQ(apply(pkg, spec).size(), pkg.n() - 1);
  EXPECT_EQ(apply(pkg, FilterSpec{}).size(), pkg.n());
}

TEST(SliderBounds, FixtureMatchesOracle) {
  const auto bounds = slider_bounds(fixture());
  for (auto m : kAllFilterMetrics) {
    const auto i = static_cast<std::size_t>(m);
    EXPECT_EQ(bounds[i].first, fx::kSliderBounds[i].lo) << metric_name(m);
    EXPECT_EQ(bounds[i].second, fx::kSliderBounds[i].hi) << metric_name(m);
  }
}

TEST(SliderBounds, EmptyPackageIsAnError) {
  try {
    slider_bounds(Package{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyPackage);
  }
}

TEST(SliderBounds, FullExtentSelectsEverything) {
  for (const Package& pkg : {fixture(), load_sample()}) {
    EXPECT_EQ(apply(pkg, full_extent(slider_bounds(pkg))), whole(pkg));
  }
}

TEST(FilterLaws, PropertyIdentityIdempotenceMonotonicity) {
  Rng rng(22);
  for (int i = 0; i < 500; ++i) {
    const Package pkg = settle(testing::random_package(rng), UsageSource::kExported, Weights::defaults());
    ASSERT_EQ(apply(pkg, FilterSpec{}), whole(pkg));
    ASSERT_EQ(apply(pkg, full_extent(slider_bounds(pkg))), whole(pkg));

    const auto spec = random_spec(rng, pkg);
    const auto once = apply(pkg, spec);
    ASSERT_EQ(apply(once, spec), once);
    ASSERT_TRUE(subset(once, whole(pkg)));

    const auto tighter = tighten(rng, spec, pkg);
    ASSERT_TRUE(subset(apply(pkg, tighter), once));

    const auto other = random_spec(rng, pkg);
    ASSERT_EQ(apply(apply(pkg, spec), other), apply(pkg, conjunction(spec, other)));
    ASSERT_EQ(apply(apply(pkg, spec), other), apply(apply(pkg, other), spec));
  }
}

}  // namespace
}  // namespace unsubx
