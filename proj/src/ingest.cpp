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
#include "unsubx/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <iterator>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

#include "unsubx/csv.hpp"

namespace unsubx {

namespace detail {
std::string_view sample_export_csv();  // generated at build time
}  // namespace detail

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string slugify(std::string_view title) {
  std::string slug;
  bool pending_sep = false;
  for (unsigned char c : title) {
    if (std::isalnum(c) && c < 0x80) {
      if (pending_sep && !slug.empty()) slug.push_back('-');
      pending_sep = false;
      slug.push_back(static_cast<char>(std::tolower(c)));
    } else {
      pending_sep = true;
    }
  }
  return slug.empty() ? std::string("journal") : slug;
}

// Hands out unique row keys: ISSN when present, else slug + ordinal.
class KeyAllocator {
 public:
  std::string next(std::string_view issn, std::string_view title) {
    std::string base = issn.empty() ? slugify(title) : std::string(issn);
    const int ordinal = ++seen_[base];
    std::string key = issn.empty() || ordinal > 1 ? base + "-" + std::to_string(ordinal) : base;
    while (!used_.insert(key).second) key += "-" + std::to_string(ordinal);
    return key;
  }

 private:
  std::unordered_map<std::string, int> seen_;
  std::set<std::string> used_;
};

class RowDecoder {
 public:
  RowDecoder(const ColumnMap& map, std::vector<Warning>& warnings) : map_(map), warnings_(warnings) {}

  JournalRecord decode(const csv::Row& row, KeyAllocator& keys) {
    line_ = row.line;
    cells_ = &row.cells;
    JournalRecord rec;
    rec.title = std::string(trim(cell(Field::kTitle)));
    if (rec.title.empty()) fail(Field::kTitle, "title is empty");
    if (map_.column(Field::kIssn)) rec.issn = std::string(trim(cell(Field::kIssn)));
    rec.key = keys.next(rec.issn, rec.title);
    key_ = &rec.key;

    auto status = parse_status(cell(Field::kSubscribed));
    if (!status) {
      warn(WarningKind::kUnknownStatus, Field::kSubscribed,
           "unrecognised Subscribed value '" + std::string(cell(Field::kSubscribed)) +
               "' treated as blank");
    }
    rec.subscribed = status.value_or(SubscribedStatus::kBlank);

    rec.price = amount(Field::kPrice);
    rec.downloads = amount(Field::kDownloads);
    rec.citations = amount(Field::kCitations);
    rec.authorships = amount(Field::kAuthorships);
    rec.usage = amount(Field::kUsage);
    rec.oa_percent = percent(Field::kOaPercent);
    rec.backfile_percent = percent(Field::kBackfilePercent);

    if (auto cpu = number(Field::kCpu)) {
      if (*cpu < 0) {
        warn(WarningKind::kClampedValue, Field::kCpu, "negative cpu clamped to 0");
        *cpu = 0;
      }
      rec.cpu = *cpu;
    }
    if (auto rank = number(Field::kCpuRank)) {
      if (*rank < 1 || *rank != std::floor(*rank) || *rank > 1e9) {
        fail(Field::kCpuRank, "cpu_rank must be a positive integer");
      }
      rec.cpu_rank = static_cast<int>(*rank);
    }
    rec.subjects = split_subjects(cell(Field::kSubject));
    rec.cells = row.cells;
    key_ = nullptr;
    return rec;
  }

 private:
  std::string_view cell(Field f) const { return (*cells_)[*map_.column(f)]; }

  [[noreturn]] void fail(Field f, const std::string& reason) const {
    throw RowParseError(line_, *map_.source_header(f), reason);
  }

  void warn(WarningKind kind, Field f, std::string message) {
    warnings_.push_back(Warning{kind, key_ ? *key_ : std::string(), std::string(field_name(f)),
                                std::nullopt, std::move(message)});
  }

  std::optional<double> number(Field f) const {
    try {
      return parse_number(cell(f));
    } catch (const std::invalid_argument&) {
      fail(f, "not a number: '" + std::string(cell(f)) + "'");
    }
  }

  double required_number(Field f) {
    auto v = number(f);
    if (!v) {
      warn(WarningKind::kMissingValue, f, std::string(field_name(f)) + " is empty, read as 0");
      return 0;
    }
    return *v;
  }

  double amount(Field f) {
    double v = required_number(f);
    if (v < 0) {
      warn(WarningKind::kClampedValue, f, "negative " + std::string(field_name(f)) + " clamped to 0");
      v = 0;
    }
    return v;
  }

  double percent(Field f) {
    double v = required_number(f);
    if (v < 0 || v > 100) {
      warn(WarningKind::kClampedValue, f, std::string(field_name(f)) + " outside [0, 100] clamped");
      v = std::clamp(v, 0.0, 100.0);
    }
    return v;
  }

  const ColumnMap& map_;
  std::vector<Warning>& warnings_;
  std::size_t line_ = 0;
  const std::vector<std::string>* cells_ = nullptr;
  const std::string* key_ = nullptr;
};

}  // namespace

const std::vector<FieldAliases>& alias_table() {
  static const std::vector<FieldAliases> table = {
      {Field::kTitle, true, {"title", "journal_title", "journal_name", "journal"}},
      {Field::kSubscribed, true, {"subscribed", "subscription_status", "decision"}},
      {Field::kPrice, true, {"subscription_cost", "price", "subscription_price", "list_price"}},
      {Field::kDownloads, true, {"downloads", "total_downloads"}},
      {Field::kCitations, true, {"citations", "total_citations"}},
      {Field::kAuthorships, true, {"authorships", "total_authorships", "authorship"}},
      {Field::kUsage, true, {"usage", "weighted_usage"}},
      {Field::kCpu, true, {"cpu", "cost_per_use"}},
      {Field::kCpuRank, true, {"cpu_rank", "cost_per_use_rank"}},
      {Field::kOaPercent,
       true,
       {"free_instant_usage_percent", "oa_percent", "open_access_percent", "oa"}},
      {Field::kBackfilePercent, true, {"backfile_percent", "backfile", "backfile_usage_percent"}},
      {Field::kSubject, true, {"subject", "subjects", "subject_area", "era_subjects"}},
      {Field::kIssn, false, {"issn_l", "issn"}},
  };
  return table;
}

std::string normalize_header(std::string_view header) {
  header = trim(header);
  std::string out;
  for (unsigned char c : header) {
    if (c == ' ' || c == '-' || c == '.' || c == '_' || c == '\t') {
      if (!out.empty() && out.back() != '_') out.push_back('_');
    } else if (c == '%') {
      if (!out.empty() && out.back() != '_') out.push_back('_');
      out += "percent";
    } else {
      out.push_back(static_cast<char>(std::tolower(c)));
    }
  }
  while (!out.empty() && out.back() == '_') out.pop_back();
  return out;
}

ColumnMap map_headers(std::span<const std::string> headers) {
  ColumnMap map;
  map.headers.assign(headers.begin(), headers.end());

  std::map<std::string, std::size_t> by_name;
  for (std::size_t i = 0; i < headers.size(); ++i) {
    auto [it, fresh] = by_name.emplace(normalize_header(headers[i]), i);
    if (!fresh) throw DuplicateHeader(headers[i]);
  }

  std::vector<bool> claimed(headers.size(), false);
  std::vector<std::string> missing;
  for (const auto& entry : alias_table()) {
    for (auto alias : entry.names) {
      auto it = by_name.find(std::string(alias));
      if (it == by_name.end()) continue;
      map.columns[static_cast<std::size_t>(entry.field)] = it->second;
      claimed[it->second] = true;
      break;
    }
    if (entry.required && !map.column(entry.field)) missing.emplace_back(field_name(entry.field));
  }
  if (!missing.empty()) throw MissingRequiredColumn(missing.front());

  for (std::size_t i = 0; i < headers.size(); ++i) {
    if (!claimed[i]) map.passthrough.push_back(i);
  }
  return map;
}

std::optional<double> parse_number(std::string_view cell) {
  std::string cleaned;
  cleaned.reserve(cell.size());
  for (std::size_t i = 0; i < cell.size(); ++i) {
    const unsigned char c = static_cast<unsigned char>(cell[i]);
    if (std::isspace(c) || c == ',' || c == '$' || c == '%') continue;
    // UTF-8 currency signs: pound, yen (C2 A3 / C2 A5) and euro (E2 82 AC).
    if (c == 0xC2 && i + 1 < cell.size() &&
        (static_cast<unsigned char>(cell[i + 1]) == 0xA3 ||
         static_cast<unsigned char>(cell[i + 1]) == 0xA5)) {
      ++i;
      continue;
    }
    if (c == 0xE2 && cell.substr(i, 3) == "\xE2\x82\xAC") {
      i += 2;
      continue;
    }
    cleaned.push_back(static_cast<char>(c));
  }
  if (cleaned.empty()) return std::nullopt;
  std::string_view digits = cleaned;
  if (digits.front() == '+') digits.remove_prefix(1);
  double value = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (ec != std::errc() || ptr != digits.data() + digits.size() || !std::isfinite(value)) {
    throw std::invalid_argument("not a number");
  }
  return value;
}

std::vector<std::string> split_subjects(std::string_view cell) {
  const char sep = cell.find(';') != std::string_view::npos ? ';' : ',';
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= cell.size()) {
    std::size_t end = cell.find(sep, start);
    if (end == std::string_view::npos) end = cell.size();
    auto part = trim(cell.substr(start, end - start));
    if (!part.empty()) out.emplace_back(part);
    start = end + 1;
  }
  return out;
}

Package parse_export(std::string_view bytes) {
  csv::Table table = csv::read(bytes);
  Package pkg;
  pkg.layout = table.layout;
  pkg.column_map = map_headers(table.header);

  const std::size_t width = table.header.size();
  RowDecoder decoder(pkg.column_map, pkg.ingest_warnings);
  KeyAllocator keys;
  pkg.records.reserve(table.rows.size());
  for (const auto& row : table.rows) {
    if (row.cells.size() != width) {
      throw RowParseError(row.line, "",
                          "expected " + std::to_string(width) + " fields, found " +
                              std::to_string(row.cells.size()));
    }
    pkg.records.push_back(decoder.decode(row, keys));
  }
  pkg.total_weighted_usage = sum_usage(pkg);
  return pkg;
}

Package parse_export(std::istream& in) {
  std::string bytes{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return parse_export(bytes);
}

std::string_view sample_csv() { return detail::sample_export_csv(); }

Package load_sample() {
  static const Package sample = parse_export(detail::sample_export_csv());
  return sample;
}

ValidationReport validate_package(const Package& pkg) {
  ValidationReport report;
  report.warnings = pkg.ingest_warnings;

  for (const auto& rec : pkg.records) {
    if (rec.oa_percent + rec.backfile_percent > 100) {
      std::ostringstream msg;
      msg << "oa_percent " << rec.oa_percent << " + backfile_percent " << rec.backfile_percent
          << " exceeds 100";
      report.warnings.push_back(Warning{WarningKind::kOverlappingFulfillment, rec.key, "", std::nullopt,
                                        msg.str()});
    }
  }

  std::map<int, int> rank_counts;
  for (const auto& rec : pkg.records) {
    if (rec.cpu_rank) ++rank_counts[*rec.cpu_rank];
  }
  if (!rank_counts.empty()) {
    for (auto [rank, count] : rank_counts) {
      if (count > 1) {
        report.warnings.push_back(Warning{WarningKind::kDuplicateRank, "", "cpu_rank", rank,
                                          "cpu_rank " + std::to_string(rank) + " appears " +
                                              std::to_string(count) + " times"});
      }
    }
    for (int r = 1; r <= static_cast<int>(pkg.n()); ++r) {
      if (!rank_counts.count(r)) {
        report.warnings.push_back(Warning{WarningKind::kRankGap, "", "cpu_rank", r,
                                          "cpu_rank " + std::to_string(r) + " is not assigned"});
      }
    }
  }
  return report;
}

}  // namespace unsubx
