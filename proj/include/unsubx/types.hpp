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
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace unsubx {

// ---------------------------------------------------------------------------
// Subscribed decision
// ---------------------------------------------------------------------------

/// Four-state renewal decision carried in the Subscribed column.
enum class SubscribedStatus : std::uint8_t { kTrue = 0, kFalse = 1, kMaybe = 2, kBlank = 3 };

inline constexpr std::array<SubscribedStatus, 4> kAllStatuses = {
    SubscribedStatus::kTrue, SubscribedStatus::kFalse, SubscribedStatus::kMaybe,
    SubscribedStatus::kBlank};

/// Cell text written to CSV: "TRUE", "FALSE", "MAYBE" or "" for blank.
std::string_view csv_token(SubscribedStatus status);

/// Label used in JSON and tables; blank is spelled "BLANK".
std::string_view status_label(SubscribedStatus status);

/// Case-insensitive decode of TRUE/FALSE/MAYBE/BLANK; empty or whitespace
/// decodes to blank. Anything else yields nullopt.
std::optional<SubscribedStatus> parse_status(std::string_view text);

constexpr std::size_t index_of(SubscribedStatus s) { return static_cast<std::size_t>(s); }

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

enum class ErrorCode {
  kInvalidArgument,
  kEmptyFile,
  kMissingRequiredColumn,
  kDuplicateHeader,
  kRowParse,
  kUnknownKey,
  kInvalidRange,
  kEmptyPackage,
  kEmptyInput,
  kUnknownChart,
  kDegenerateDenominator,
  kZeroPackageUsage,
};

std::string_view error_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message) : std::runtime_error(message), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class MissingRequiredColumn : public Error {
 public:
  explicit MissingRequiredColumn(std::string column);
  const std::string& column() const noexcept { return column_; }

 private:
  std::string column_;
};

class DuplicateHeader : public Error {
 public:
  explicit DuplicateHeader(std::string header);
  const std::string& header() const noexcept { return header_; }

 private:
  std::string header_;
};

/// Malformed data row. `line` is the 1-based physical line where the record
/// starts; `column` is the source header name, empty for structural errors.
class RowParseError : public Error {
 public:
  RowParseError(std::size_t line, std::string column, std::string reason);
  std::size_t line() const noexcept { return line_; }
  const std::string& column() const noexcept { return column_; }
  const std::string& reason() const noexcept { return reason_; }

 private:
  std::size_t line_;
  std::string column_;
  std::string reason_;
};

// ---------------------------------------------------------------------------
// Warnings
// ---------------------------------------------------------------------------

enum class WarningKind {
  kOverlappingFulfillment,  // oa_percent + backfile_percent > 100
  kDuplicateRank,
  kRankGap,
  kClampedValue,
  kMissingValue,
  kUnknownStatus,
};

std::string_view warning_name(WarningKind kind);

struct Warning {
  WarningKind kind;
  std::string key;    // record key, empty for package-level warnings
  std::string field;  // canonical field name when relevant
  std::optional<int> rank;
  std::string message;

  bool operator==(const Warning&) const = default;
};

// ---------------------------------------------------------------------------
// Columns and records
// ---------------------------------------------------------------------------

/// Canonical fields recognised in an export. Everything else is passthrough.
enum class Field : std::uint8_t {
  kTitle,
  kSubscribed,
  kPrice,
  kDownloads,
  kCitations,
  kAuthorships,
  kUsage,
  kCpu,
  kCpuRank,
  kOaPercent,
  kBackfilePercent,
  kSubject,
  kIssn,  // optional
};

inline constexpr std::size_t kFieldCount = 13;
inline constexpr std::size_t kRequiredFieldCount = 12;

std::string_view field_name(Field field);

/// Resolved header layout of one export file.
struct ColumnMap {
  /// Original header cells, in file order, exactly as read.
  std::vector<std::string> headers;
  /// Column index for each canonical field; unset only for optional fields.
  std::array<std::optional<std::size_t>, kFieldCount> columns{};
  /// Indices of unrecognised columns, in file order.
  std::vector<std::size_t> passthrough;

  std::optional<std::size_t> column(Field f) const { return columns[static_cast<std::size_t>(f)]; }
  std::optional<std::string> source_header(Field f) const;
  std::vector<std::string> passthrough_headers() const;

  bool operator==(const ColumnMap&) const = default;
};

/// Physical layout of the uploaded file, kept so exports reproduce it.
struct CsvLayout {
  std::string eol = "\n";
  bool bom = false;
  bool trailing_eol = true;

  bool operator==(const CsvLayout&) const = default;
};

struct JournalRecord {
  std::string key;
  std::string issn;
  std::string title;
  double price = 0;
  double downloads = 0;
  double citations = 0;
  double authorships = 0;
  double usage = 0;
  std::optional<double> cpu;
  std::optional<int> cpu_rank;
  double oa_percent = 0;
  double backfile_percent = 0;
  std::vector<std::string> subjects;
  SubscribedStatus subscribed = SubscribedStatus::kBlank;
  /// Every cell of the source row, verbatim, in header order.
  std::vector<std::string> cells;

  bool operator==(const JournalRecord&) const = default;
};

struct Package {
  std::vector<JournalRecord> records;
  ColumnMap column_map;
  double total_weighted_usage = 0;
  CsvLayout layout;
  /// Notes produced while coercing cells (clamps, blanks, unknown tokens).
  std::vector<Warning> ingest_warnings;

  std::size_t n() const noexcept { return records.size(); }
  bool empty() const noexcept { return records.empty(); }
  std::optional<std::size_t> index_of(std::string_view key) const;
  const JournalRecord* find(std::string_view key) const;

  bool operator==(const Package&) const = default;
};

/// Sum of usage over records in file order.
double sum_usage(const Package& pkg);

}  // namespace unsubx
