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

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "unsubx/types.hpp"

namespace unsubx::csv {

struct Row {
  std::size_t line = 0;  // 1-based line where the record starts
  std::vector<std::string> cells;
};

struct Table {
  std::vector<std::string> header;
  std::vector<Row> rows;
  CsvLayout layout;
};

/// RFC 4180 reader. Quoted fields may span lines and contain delimiters;
/// a doubled quote inside a quoted field is a literal quote. A UTF-8 BOM is
/// stripped and remembered. Entirely empty lines are skipped.
///
/// Throws EmptyFile when there is no header row and RowParseError for an
/// unterminated quote or text after a closing quote.
Table read(std::string_view bytes);

/// Minimal quoting: a field is quoted only if it contains a comma, quote,
/// CR or LF.
void append_row(std::string& out, const std::vector<std::string>& cells, std::string_view eol);

bool needs_quoting(std::string_view cell);

}  // namespace unsubx::csv
