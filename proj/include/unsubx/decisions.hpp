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
#include <chrono>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "unsubx/filters.hpp"
#include "unsubx/types.hpp"

namespace unsubx {

struct EditEntry {
  std::string key;
  SubscribedStatus from;
  SubscribedStatus to;
  std::chrono::system_clock::time_point at;
};

using EditLog = std::vector<EditEntry>;

/// Returns `pkg` with one record's decision replaced and appends to `log`.
/// Writing the current status is allowed and still logged.
/// Throws Error(kUnknownKey).
Package set_status(Package pkg, std::string_view key, SubscribedStatus status, EditLog& log);

struct JournalMatch {
  std::string key;
  std::string title;

  bool operator==(const JournalMatch&) const = default;
};

/// Case-insensitive substring search over titles, ordered by match
/// position, then title. An empty query matches nothing.
std::vector<JournalMatch> find_journal(const Package& pkg, std::string_view query);

/// Titles equal to `title` ignoring ASCII case, in record order.
std::vector<JournalMatch> find_exact_title(const Package& pkg, std::string_view title);

struct StatusTotals {
  std::size_t titles = 0;
  double dollars = 0;

  bool operator==(const StatusTotals&) const = default;
};

struct SummaryTable {
  std::array<StatusTotals, 4> by_status{};
  StatusTotals total;

  const StatusTotals& operator[](SubscribedStatus s) const { return by_status[index_of(s)]; }
  bool operator==(const SummaryTable&) const = default;
};

/// Title counts and summed price per decision. Prices are taken as-is.
SummaryTable summarize(const Package& pkg);
SummaryTable summarize(const View& view);

/// The package as CSV: original header row and cells, with the Subscribed
/// cell rewritten only where the decision no longer matches what the
/// source cell decodes to. Deterministic.
std::string render_csv(const Package& pkg);

/// 12 random ASCII letters/digits + ".csv".
std::string random_export_name();

struct ExportedFile {
  std::string filename;
  std::string bytes;
};

ExportedFile export_csv(const Package& pkg);

}  // namespace unsubx
