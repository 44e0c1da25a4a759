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

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "unsubx/types.hpp"

namespace unsubx {

/// Coefficients of the weighted-usage sum. Defaults count a citation as ten
/// downloads and an authorship as a hundred.
struct Weights {
  double download = 1;
  double citation = 10;
  double authorship = 100;

  static constexpr Weights defaults() { return {}; }
  /// All three finite and non-negative.
  bool valid() const noexcept;
  Weights scaled(double k) const noexcept { return {download * k, citation * k, authorship * k}; }

  bool operator==(const Weights&) const = default;
};

/// Parses "d,c,a". Throws Error(kInvalidArgument) on malformed or invalid
/// input.
Weights parse_weights(std::string_view text);

/// Which usage column drives the derived metrics: the value exported by
/// Unsub, or the weighted sum recomputed under the session's weights.
enum class UsageSource { kExported, kRecomputed };

std::optional<UsageSource> parse_usage_source(std::string_view text);

double weighted_usage(const JournalRecord& rec, const Weights& w);

/// Ratio weights: (1, sum(downloads)/sum(citations), sum(downloads)/sum(authorships)).
/// Throws Error(kDegenerateDenominator) if either denominator is zero.
Weights dynamic_weights(const Package& pkg);

/// Share of usage that only a current-year subscription can satisfy:
/// max(0, 100 - (oa + backfile)) * usage / 100.
double current_year_usage(const JournalRecord& rec);

/// True when oa + backfile > 100, i.e. current_year_usage was clamped.
bool fulfillment_overlaps(const JournalRecord& rec);

/// Contribution to package demand in percentage points:
/// 100 * current_year_usage / total_weighted_usage.
/// Throws Error(kZeroPackageUsage) if total_weighted_usage <= 0.
double instant_fill_percent(const JournalRecord& rec, double total_weighted_usage);

/// Price of one IF% point. Undefined when if_percent is not positive.
std::optional<double> normalized_if_cost(const JournalRecord& rec, double if_percent);

/// cpu as exported, or price/usage when the cell was blank and usage > 0.
std::optional<double> effective_cpu(const JournalRecord& rec);

/// Rank 1 is the lowest cost per use. Exported ranks are returned unchanged
/// when they form a permutation of 1..N; otherwise ranks are recomputed by
/// ascending cpu (undefined cpu last), then title, then key.
/// Output follows record order.
std::vector<std::pair<std::string, int>> compute_cpu_ranks(const Package& pkg);

struct RecordMetrics {
  double usage = 0;
  std::optional<double> cpu;
  int cpu_rank = 0;
  double current_year_usage = 0;
  double if_percent = 0;
  std::optional<double> normalized_if_cost;

  bool operator==(const RecordMetrics&) const = default;
};

/// Derived values, index-aligned with Package::records.
struct PackageMetrics {
  std::vector<RecordMetrics> records;
  double total_weighted_usage = 0;
  double package_if_percent = 0;
  std::vector<Warning> warnings;

  bool operator==(const PackageMetrics&) const = default;
};

/// Metrics from the usage values currently stored in the records.
/// An empty package yields empty metrics; a non-empty package with zero
/// total usage throws Error(kZeroPackageUsage).
PackageMetrics evaluate(const Package& pkg);

/// Copy of `pkg` with usage, cpu, cpu_rank and the package total
/// recomputed under `w`. Source cells are left untouched.
Package reweighted(Package pkg, const Weights& w);

/// evaluate(reweighted(pkg, w)).
PackageMetrics recompute_all(const Package& pkg, const Weights& w);

/// Package whose numeric fields are authoritative for filtering and
/// charting: reweighted under `w` for kRecomputed, and in every case with
/// cpu_rank settled to compute_cpu_ranks.
Package settle(Package pkg, UsageSource source, const Weights& w);

}  // namespace unsubx
