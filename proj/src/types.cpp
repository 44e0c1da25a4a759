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
#include "unsubx/types.hpp"

#include <algorithm>
#include <cctype>

namespace unsubx {

std::string_view csv_token(SubscribedStatus status) {
  switch (status) {
    case SubscribedStatus::kTrue: return "TRUE";
    case SubscribedStatus::kFalse: return "FALSE";
    case SubscribedStatus::kMaybe: return "MAYBE";
    case SubscribedStatus::kBlank: return "";
  }
  return "";
}

std::string_view status_label(SubscribedStatus status) {
  return status == SubscribedStatus::kBlank ? "BLANK" : csv_token(status);
}

std::optional<SubscribedStatus> parse_status(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) return SubscribedStatus::kBlank;
  std::string upper(text);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  if (upper == "TRUE") return SubscribedStatus::kTrue;
  if (upper == "FALSE") return SubscribedStatus::kFalse;
  if (upper == "MAYBE") return SubscribedStatus::kMaybe;
  if (upper == "BLANK") return SubscribedStatus::kBlank;
  return std::nullopt;
}

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kEmptyFile: return "EmptyFile";
    case ErrorCode::kMissingRequiredColumn: return "MissingRequiredColumn";
    case ErrorCode::kDuplicateHeader: return "DuplicateHeader";
    case ErrorCode::kRowParse: return "RowParseError";
    case ErrorCode::kUnknownKey: return "UnknownKey";
    case ErrorCode::kInvalidRange: return "InvalidRange";
    case ErrorCode::kEmptyPackage: return "EmptyPackage";
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kUnknownChart: return "UnknownChartId";
    case ErrorCode::kDegenerateDenominator: return "DegenerateDenominator";
    case ErrorCode::kZeroPackageUsage: return "ZeroPackageUsage";
  }
  return "Error";
}

MissingRequiredColumn::MissingRequiredColumn(std::string column)
    : Error(ErrorCode::kMissingRequiredColumn, "missing required column: " + column),
      column_(std::move(column)) {}

DuplicateHeader::DuplicateHeader(std::string header)
    : Error(ErrorCode::kDuplicateHeader, "duplicate header: " + header), header_(std::move(header)) {}

namespace {
std::string row_message(std::size_t line, const std::string& column, const std::string& reason) {
  std::string msg = "line " + std::to_string(line);
  if (!column.empty()) msg += ", column '" + column + "'";
  return msg + ": " + reason;
}
}  // namespace

RowParseError::RowParseError(std::size_t line, std::string column, std::string reason)
    : Error(ErrorCode::kRowParse, row_message(line, column, reason)),
      line_(line),
      column_(std::move(column)),
      reason_(std::move(reason)) {}

std::string_view warning_name(WarningKind kind) {
  switch (kind) {
    case WarningKind::kOverlappingFulfillment: return "OverlappingFulfillment";
    case WarningKind::kDuplicateRank: return "DuplicateRank";
    case WarningKind::kRankGap: return "RankGap";
    case WarningKind::kClampedValue: return "ClampedValue";
    case WarningKind::kMissingValue: return "MissingValue";
    case WarningKind::kUnknownStatus: return "UnknownStatus";
  }
  return "Warning";
}

std::string_view field_name(Field field) {
  switch (field) {
    case Field::kTitle: return "title";
    case Field::kSubscribed: return "subscribed";
    case Field::kPrice: return "price";
    case Field::kDownloads: return "downloads";
    case Field::kCitations: return "citations";
    case Field::kAuthorships: return "authorships";
    case Field::kUsage: return "usage";
    case Field::kCpu: return "cpu";
    case Field::kCpuRank: return "cpu_rank";
    case Field::kOaPercent: return "oa_percent";
    case Field::kBackfilePercent: return "backfile_percent";
    case Field::kSubject: return "subject";
    case Field::kIssn: return "issn";
  }
  return "";
}

std::optional<std::string> ColumnMap::source_header(Field f) const {
  auto idx = column(f);
  if (!idx) return std::nullopt;
  return headers[*idx];
}

std::vector<std::string> ColumnMap::passthrough_headers() const {
  std::vector<std::string> out;
  out.reserve(passthrough.size());
  for (auto idx : passthrough) out.push_back(headers[idx]);
  return out;
}

std::optional<std::size_t> Package::index_of(std::string_view key) const {
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (records[i].key == key) return i;
  }
  return std::nullopt;
}

const JournalRecord* Package::find(std::string_view key) const {
  auto idx = index_of(key);
  return idx ? &records[*idx] : nullptr;
}

double sum_usage(const Package& pkg) {
  double total = 0;
  for (const auto& rec : pkg.records) total += rec.usage;
  return total;
}

}  // namespace unsubx
