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

#include <istream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "unsubx/types.hpp"

namespace unsubx {

/// Accepted spellings for each canonical field, highest priority first.
/// Names are compared after header normalization (see normalize_header).
/// When several aliases of one field are present the first listed wins and
/// the rest become passthrough columns.
struct FieldAliases {
  Field field;
  bool required;
  std::vector<std::string_view> names;
};
const std::vector<FieldAliases>& alias_table();

/// Trim, lowercase, and turn runs of spaces, hyphens and dots into '_'.
std::string normalize_header(std::string_view header);

/// Resolves canonical fields against a header row.
/// Throws MissingRequiredColumn (first missing field in canonical order) or
/// DuplicateHeader when two headers normalize to the same name.
ColumnMap map_headers(std::span<const std::string> headers);

/// Parses an export file. Row order is preserved.
Package parse_export(std::string_view bytes);
Package parse_export(std::istream& in);

/// The embedded demo package: 431 invented journals shaped like a real
/// export.
Package load_sample();
std::string_view sample_csv();

struct ValidationReport {
  std::vector<Warning> warnings;
  bool clean() const noexcept { return warnings.empty(); }
};

/// Never throws and never mutates. Reports coercion notes recorded during
/// parsing plus overlapping fulfillment and cpu_rank duplicates/gaps.
ValidationReport validate_package(const Package& pkg);

/// Strips currency symbols, thousands separators, '%' and whitespace, then
/// parses a finite decimal. Returns nullopt for an empty cell.
/// Throws std::invalid_argument if the remainder is not a finite number.
std::optional<double> parse_number(std::string_view cell);

/// Splits a subject cell on ';' when present, otherwise on ','.
std::vector<std::string> split_subjects(std::string_view cell);

}  // namespace unsubx
