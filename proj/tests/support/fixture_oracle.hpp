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

// Expected values for tests/data/fixture10.csv, produced by
// tests/oracle/fixture_oracle.py and frozen here. Regenerate by running the
// script and copying its output; never edit by hand.

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>

namespace unsubx::testing::fixture {

inline constexpr std::string_view kFile = "fixture10.csv";
inline constexpr std::size_t kRows = 10;
inline constexpr double kTotalWeightedUsage = 10595.0;
inline constexpr double kPackageIfPercent = 61.2883435582822;

struct Row {
  std::string_view key;
  std::string_view title;
  double usage;
  double current_year_usage;
  double if_percent;
  std::optional<double> normalized_if_cost;
  int cpu_rank;
};

inline constexpr std::array<Row, kRows> kRowsExpected = {{
    {"1111-1111", "Alpha Letters", 520.0, 364.0, 3.4355828220858897, 349.2857142857143, 8},
    {"beta-annals-1", "Beta Annals", 300.0, 150.0, 1.4157621519584709, 423.8, 6},
    {"2222-2222", "Gamma Review", 500.0, 300.0, 2.8315243039169418, 353.1666666666667, 7},
    {"journal-of-soil-water-and-air-1", "Journal of Soil, Water and Air", 705.0, 352.5, 3.3270410571024067,
     375.709219858156, 4},
    {"3333-3333", "The \"Open\" Review", 1400.0, 0.0, 0.0, std::nullopt, 1},
    {"delta-quarterly-1", "Delta Quarterly", 0.0, 0.0, 0.0, std::nullopt, 10},
    {"4444-4444", "Epsilon Letters", 2200.0, 1760.0, 16.611609249646058, 180.59659090909093, 2},
    {"zeta-research-1", "Zeta Research", 4350.0, 3045.0, 28.73997168475696, 278.35796387520526, 5},
    {"5555-5555", "Eta Studies", 140.0, 42.0, 0.3964134025483719, 6054.285714285715, 9},
    {"theta-bulletin-1", "Theta Bulletin", 480.0, 480.0, 4.530438886267107, 154.51041666666666, 3},
}};

struct StatusRow {
  std::size_t titles;
  double dollars;
};

// TRUE, FALSE, MAYBE, BLANK
inline constexpr std::array<StatusRow, 4> kSummary = {{{3, 10200.0}, {3, 3900.0}, {2, 4250.0}, {2, 1150.0}}};
inline constexpr double kTotalDollars = 19500.0;

struct Bounds {
  double lo;
  double hi;
};

// Filter-metric order: price, cpu_rank, downloads, citations, authorships,
// usage, oa_percent.
inline constexpr std::array<Bounds, 7> kSliderBounds = {
    {{450.0, 8000.0}, {1, 10}, {0.0, 2500.0}, {0.0, 150.0}, {0.0, 4.0}, {0.0, 4350.0}, {0.0, 70.0}}};

inline constexpr std::array<std::size_t, 10> kAuthorshipBins10 = {3, 1, 3, 0, 0, 1, 0, 0, 1, 1};
inline constexpr std::array<std::size_t, 10> kCpuBoxes10 = {7, 1, 0, 0, 0, 0, 0, 0, 0, 1};
inline constexpr std::size_t kCpuUndefined = 1;

struct SubjectCount {
  std::string_view subject;
  std::size_t count;
};

inline constexpr std::array<SubjectCount, 10> kSubjects = {{{"Biology", 1},
                                                            {"Chemistry", 2},
                                                            {"Engineering", 1},
                                                            {"Environmental Science", 1},
                                                            {"Mathematics", 2},
                                                            {"Medicine", 2},
                                                            {"Nursing", 1},
                                                            {"Physics", 1},
                                                            {"Social Sciences", 1},
                                                            {"Unclassified", 1}}};
inline constexpr std::size_t kSubjectPairs = 13;

}  // namespace unsubx::testing::fixture
