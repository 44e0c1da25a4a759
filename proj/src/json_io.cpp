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
#include "unsubx/json_io.hpp"

namespace unsubx {

using nlohmann::json;

namespace {
json totals_json(const StatusTotals& t) { return {{"titles", t.titles}, {"dollars", t.dollars}}; }
json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }
}  // namespace

json to_json(const SummaryTable& table) {
  json out = json::object();
  for (auto s : kAllStatuses) out[std::string(status_label(s))] = totals_json(table[s]);
  out["total"] = totals_json(table.total);
  return out;
}

json to_json(const JournalRecord& rec, const RecordMetrics& m) {
  return json{{"key", rec.key},
              {"issn", rec.issn},
              {"title", rec.title},
              {"subscribed", status_label(rec.subscribed)},
              {"price", rec.price},
              {"downloads", rec.downloads},
              {"citations", rec.citations},
              {"authorships", rec.authorships},
              {"usage", m.usage},
              {"cpu", optional_json(m.cpu)},
              {"cpu_rank", m.cpu_rank},
              {"oa_percent", rec.oa_percent},
              {"backfile_percent", rec.backfile_percent},
              {"subjects", rec.subjects},
              {"current_year_usage", m.current_year_usage},
              {"if_percent", m.if_percent},
              {"normalized_if_cost", optional_json(m.normalized_if_cost)}};
}

json to_json(const Warning& w) {
  json out{{"kind", warning_name(w.kind)}, {"message", w.message}};
  if (!w.key.empty()) out["key"] = w.key;
  if (!w.field.empty()) out["field"] = w.field;
  if (w.rank) out["rank"] = *w.rank;
  return out;
}

json to_json(const std::vector<Warning>& warnings) {
  json out = json::array();
  for (const auto& w : warnings) out.push_back(to_json(w));
  return out;
}

json to_json(const Weights& w) {
  return {{"download", w.download}, {"citation", w.citation}, {"authorship", w.authorship}};
}

json to_json(const SliderBounds& bounds) {
  json out = json::object();
  for (auto m : kAllFilterMetrics) {
    const auto& [lo, hi] = bounds[static_cast<std::size_t>(m)];
    out[std::string(metric_name(m))] = {{"min", lo}, {"max", hi}};
  }
  return out;
}

json error_json(const Error& e) {
  json out{{"error", error_name(e.code())}, {"message", e.what()}};
  if (const auto* missing = dynamic_cast<const MissingRequiredColumn*>(&e)) {
    out["column"] = missing->column();
  } else if (const auto* dup = dynamic_cast<const DuplicateHeader*>(&e)) {
    out["column"] = dup->header();
  } else if (const auto* row = dynamic_cast<const RowParseError*>(&e)) {
    out["line"] = row->line();
    out["column"] = row->column();
    out["reason"] = row->reason();
  }
  return out;
}

}  // namespace unsubx
