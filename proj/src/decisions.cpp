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
#include "unsubx/decisions.hpp"

#include <algorithm>
#include <cctype>
#include <mutex>
#include <random>

#include "unsubx/csv.hpp"

namespace unsubx {

Package set_status(Package pkg, std::string_view key, SubscribedStatus status, EditLog& log) {
  auto idx = pkg.index_of(key);
  if (!idx) throw Error(ErrorCode::kUnknownKey, "unknown journal key: " + std::string(key));
  auto& rec = pkg.records[*idx];
  log.push_back(EditEntry{rec.key, rec.subscribed, status, std::chrono::system_clock::now()});
  rec.subscribed = status;
  return pkg;
}

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

std::vector<JournalMatch> find_journal(const Package& pkg, std::string_view query) {
  if (query.empty()) return {};
  const std::string needle = lower(query);
  struct Hit {
    std::size_t pos;
    const JournalRecord* rec;
  };
  std::vector<Hit> hits;
  for (const auto& rec : pkg.records) {
    auto pos = lower(rec.title).find(needle);
    if (pos != std::string::npos) hits.push_back({pos, &rec});
  }
  std::stable_sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) {
    if (a.pos != b.pos) return a.pos < b.pos;
    return a.rec->title < b.rec->title;
  });
  std::vector<JournalMatch> out;
  out.reserve(hits.size());
  for (const auto& h : hits) out.push_back({h.rec->key, h.rec->title});
  return out;
}

std::vector<JournalMatch> find_exact_title(const Package& pkg, std::string_view title) {
  const std::string wanted = lower(title);
  std::vector<JournalMatch> out;
  for (const auto& rec : pkg.records) {
    if (lower(rec.title) == wanted) out.push_back({rec.key, rec.title});
  }
  return out;
}

namespace {

void tally(SummaryTable& table, const JournalRecord& rec) {
  auto& bucket = table.by_status[index_of(rec.subscribed)];
  ++bucket.titles;
  bucket.dollars += rec.price;
  ++table.total.titles;
  table.total.dollars += rec.price;
}

}  // namespace

SummaryTable summarize(const Package& pkg) {
  SummaryTable table;
  for (const auto& rec : pkg.records) tally(table, rec);
  return table;
}

SummaryTable summarize(const View& view) {
  SummaryTable table;
  for (std::size_t i = 0; i < view.size(); ++i) tally(table, view.record(i));
  return table;
}

std::string render_csv(const Package& pkg) {
  std::string out;
  if (pkg.layout.bom) out += "\xEF\xBB\xBF";
  const auto& eol = pkg.layout.eol;
  csv::append_row(out, pkg.column_map.headers, eol);

  const std::size_t status_col = *pkg.column_map.column(Field::kSubscribed);
  std::vector<std::string> cells;
  for (const auto& rec : pkg.records) {
    cells = rec.cells;
    const auto& source = cells[status_col];
    if (parse_status(source).value_or(SubscribedStatus::kBlank) != rec.subscribed) {
      cells[status_col] = std::string(csv_token(rec.subscribed));
    }
    csv::append_row(out, cells, eol);
  }
  if (!pkg.layout.trailing_eol && out.size() >= eol.size()) out.resize(out.size() - eol.size());
  return out;
}

std::string random_export_name() {
  static constexpr std::string_view kAlphabet =
      "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789";
  static std::mutex mu;
  static std::mt19937_64 rng{std::random_device{}()};
  std::uniform_int_distribution<std::size_t> pick(0, kAlphabet.size() - 1);
  std::string name(12, ' ');
  {
    std::lock_guard lock(mu);
    for (auto& c : name) c = kAlphabet[pick(rng)];
  }
  return name + ".csv";
}

ExportedFile export_csv(const Package& pkg) { return {random_export_name(), render_csv(pkg)}; }

}  // namespace unsubx
