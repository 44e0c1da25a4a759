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
#include "unsubx/filters.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

namespace unsubx {

std::string_view metric_name(FilterMetric m) {
  switch (m) {
    case FilterMetric::kPrice: return "price";
    case FilterMetric::kCpuRank: return "cpu_rank";
    case FilterMetric::kDownloads: return "downloads";
    case FilterMetric::kCitations: return "citations";
    case FilterMetric::kAuthorships: return "authorships";
    case FilterMetric::kUsage: return "usage";
    case FilterMetric::kOaPercent: return "oa_percent";
  }
  return "";
}

std::optional<double> metric_value(const JournalRecord& rec, FilterMetric m) {
  switch (m) {
    case FilterMetric::kPrice: return rec.price;
    case FilterMetric::kCpuRank:
      if (rec.cpu_rank) return static_cast<double>(*rec.cpu_rank);
      return std::nullopt;
    case FilterMetric::kDownloads: return rec.downloads;
    case FilterMetric::kCitations: return rec.citations;
    case FilterMetric::kAuthorships: return rec.authorships;
    case FilterMetric::kUsage: return rec.usage;
    case FilterMetric::kOaPercent: return rec.oa_percent;
  }
  return std::nullopt;
}

StatusSet StatusSet::of(std::initializer_list<SubscribedStatus> statuses) {
  StatusSet s = none();
  for (auto st : statuses) s.insert(st);
  return s;
}

void FilterSpec::check() const {
  for (auto m : kAllFilterMetrics) {
    const auto& r = range(m);
    if (!r) continue;
    if (std::isnan(r->lo) || std::isnan(r->hi) || r->lo > r->hi) {
      std::ostringstream msg;
      msg << "invalid " << metric_name(m) << " range: [" << r->lo << ", " << r->hi << "]";
      throw Error(ErrorCode::kInvalidRange, msg.str());
    }
  }
}

namespace {

double parse_bound(const std::string& key, const std::string& text) {
  double v = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (text.empty() || ec != std::errc() || ptr != last || std::isnan(v)) {
    throw Error(ErrorCode::kInvalidArgument, "query parameter " + key + " is not a number: '" + text + "'");
  }
  return v;
}

std::string format_bound(double v) {
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

}  // namespace

FilterSpec FilterSpec::from_query(const std::multimap<std::string, std::string>& params) {
  FilterSpec spec;
  for (auto m : kAllFilterMetrics) {
    const std::string stem(metric_name(m));
    auto lo_it = params.find(stem + "_min");
    auto hi_it = params.find(stem + "_max");
    if (lo_it == params.end() && hi_it == params.end()) continue;
    Range r{-INFINITY, INFINITY};
    if (lo_it != params.end()) r.lo = parse_bound(lo_it->first, lo_it->second);
    if (hi_it != params.end()) r.hi = parse_bound(hi_it->first, hi_it->second);
    spec.range(m) = r;
  }
  if (auto it = params.find("statuses"); it != params.end()) {
    spec.statuses = StatusSet::none();
    std::istringstream in(it->second);
    std::string token;
    while (std::getline(in, token, ',')) {
      if (token.empty()) continue;
      auto status = parse_status(token);
      if (!status) throw Error(ErrorCode::kInvalidArgument, "unknown status in statuses: '" + token + "'");
      spec.statuses.insert(*status);
    }
  }
  spec.check();
  return spec;
}

std::vector<std::pair<std::string, std::string>> FilterSpec::to_query() const {
  std::vector<std::pair<std::string, std::string>> out;
  for (auto m : kAllFilterMetrics) {
    const auto& r = range(m);
    if (!r) continue;
    const std::string stem(metric_name(m));
    if (std::isfinite(r->lo)) out.emplace_back(stem + "_min", format_bound(r->lo));
    if (std::isfinite(r->hi)) out.emplace_back(stem + "_max", format_bound(r->hi));
  }
  if (!statuses.all()) {
    std::string list;
    for (auto s : kAllStatuses) {
      if (!statuses.contains(s)) continue;
      if (!list.empty()) list += ',';
      list += status_label(s);
    }
    out.emplace_back("statuses", list);
  }
  return out;
}

View whole(const Package& pkg) {
  View v{&pkg, {}};
  v.rows.resize(pkg.n());
  for (std::size_t i = 0; i < pkg.n(); ++i) v.rows[i] = i;
  return v;
}

namespace {

bool matches(const JournalRecord& rec, const FilterSpec& spec) {
  if (!spec.statuses.contains(rec.subscribed)) return false;
  for (auto m : kAllFilterMetrics) {
    const auto& r = spec.range(m);
    if (!r) continue;
    auto v = metric_value(rec, m);
    if (!v || !r->contains(*v)) return false;
  }
  return true;
}

}  // namespace

View apply(const View& view, const FilterSpec& spec) {
  spec.check();
  View out{view.package, {}};
  for (auto row : view.rows) {
    if (matches(view.package->records[row], spec)) out.rows.push_back(row);
  }
  return out;
}

View apply(const Package& pkg, const FilterSpec& spec) { return apply(whole(pkg), spec); }

SliderBounds slider_bounds(const Package& pkg) {
  if (pkg.empty()) throw Error(ErrorCode::kEmptyPackage, "package has no records");
  SliderBounds bounds{};
  for (auto m : kAllFilterMetrics) {
    std::optional<std::pair<double, double>> extent;
    for (const auto& rec : pkg.records) {
      auto v = metric_value(rec, m);
      if (!v) continue;
      if (!extent) {
        extent.emplace(*v, *v);
      } else {
        extent->first = std::min(extent->first, *v);
        extent->second = std::max(extent->second, *v);
      }
    }
    bounds[static_cast<std::size_t>(m)] = extent.value_or(std::pair{0.0, 0.0});
  }
  return bounds;
}

FilterSpec full_extent(const SliderBounds& bounds) {
  FilterSpec spec;
  for (auto m : kAllFilterMetrics) {
    const auto& [lo, hi] = bounds[static_cast<std::size_t>(m)];
    spec.range(m) = Range{lo, hi};
  }
  return spec;
}

}  // namespace unsubx
