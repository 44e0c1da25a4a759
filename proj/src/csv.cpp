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
#include "unsubx/csv.hpp"

namespace unsubx::csv {

namespace {

constexpr std::string_view kBom = "\xEF\xBB\xBF";

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  Table run() {
    Table table;
    if (text_.substr(0, kBom.size()) == kBom) {
      table.layout.bom = true;
      pos_ = kBom.size();
    }
    bool saw_eol = false;
    bool have_header = false;
    while (pos_ < text_.size()) {
      const std::size_t start_line = line_;
      if (at_eol()) {
        // Entirely empty physical line.
        consume_eol(table.layout, saw_eol);
        continue;
      }
      Row row;
      row.line = start_line;
      read_record(row.cells);
      const bool terminated = pos_ < text_.size();
      if (terminated) consume_eol(table.layout, saw_eol);
      table.layout.trailing_eol = terminated;
      if (!have_header) {
        table.header = std::move(row.cells);
        have_header = true;
      } else {
        table.rows.push_back(std::move(row));
      }
    }
    if (!have_header) throw Error(ErrorCode::kEmptyFile, "file contains no header row");
    if (!saw_eol) table.layout.trailing_eol = false;
    return table;
  }

 private:
  bool at_eol() const { return text_[pos_] == '\n' || text_[pos_] == '\r'; }

  void consume_eol(CsvLayout& layout, bool& saw_eol) {
    std::string_view eol;
    if (text_[pos_] == '\r' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '\n') {
      eol = "\r\n";
    } else {
      eol = text_.substr(pos_, 1);
    }
    if (!saw_eol) {
      layout.eol = std::string(eol);
      saw_eol = true;
    }
    pos_ += eol.size();
    ++line_;
  }

  void read_record(std::vector<std::string>& cells) {
    for (;;) {
      cells.push_back(read_field());
      if (pos_ < text_.size() && text_[pos_] == ',') {
        ++pos_;
        continue;
      }
      return;  // end of line or end of input
    }
  }

  std::string read_field() {
    std::string field;
    if (pos_ < text_.size() && text_[pos_] == '"') {
      const std::size_t open_line = line_;
      ++pos_;
      for (;;) {
        if (pos_ >= text_.size()) {
          throw RowParseError(open_line, "", "unterminated quoted field");
        }
        const char c = text_[pos_];
        if (c == '"') {
          if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '"') {
            field.push_back('"');
            pos_ += 2;
            continue;
          }
          ++pos_;
          if (pos_ < text_.size() && text_[pos_] != ',' && !at_eol()) {
            throw RowParseError(line_, "", "unexpected character after closing quote");
          }
          return field;
        }
        if (c == '\n' || (c == '\r' && !(pos_ + 1 < text_.size() && text_[pos_ + 1] == '\n'))) {
          ++line_;
        }
        field.push_back(c);
        ++pos_;
      }
    }
    const std::size_t begin = pos_;
    while (pos_ < text_.size() && text_[pos_] != ',' && !at_eol()) ++pos_;
    field.assign(text_.substr(begin, pos_ - begin));
    return field;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
};

}  // namespace

Table read(std::string_view bytes) { return Reader(bytes).run(); }

bool needs_quoting(std::string_view cell) {
  return cell.find_first_of(",\"\r\n") != std::string_view::npos;
}

void append_row(std::string& out, const std::vector<std::string>& cells, std::string_view eol) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out.push_back(',');
    const std::string& cell = cells[i];
    if (!needs_quoting(cell)) {
      out += cell;
      continue;
    }
    out.push_back('"');
    for (char c : cell) {
      if (c == '"') out.push_back('"');
      out.push_back(c);
    }
    out.push_back('"');
  }
  out += eol;
}

}  // namespace unsubx::csv
