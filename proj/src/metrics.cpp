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
#include "unsubx/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace unsubx {

bool Weights::valid() const noexcept {
  for (double v : {download, citation, authorship}) {
    if (!std::isfinite(v) || v < 0) return false;
  }
  return true;
}

Weights parse_weights(std::string_view text) {
  std::vector<double> parts;
  std::string item;
  std::istringstream in{std::string(text)};
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw Error(ErrorCode::kInvalidArgument, "weights must be three numbers: d,c,a");
    }
    while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
    if (used != item.size()) throw Error(ErrorCode::kInvalidArgument, "weights must be three numbers: d,c,a");
    parts.push_back(v);
  }
  if (parts.size() != 3) throw Error(ErrorCode::kInvalidArgument, "weights must be three numbers: d,c,a");
  Weights w{parts[0], parts[1], parts[2]};
  if (!w.valid()) throw Error(ErrorCode::kInvalidArgument, "weights must be finite and non-negative");
  return w;
}

std::optional<UsageSource> parse_usage_source(std::string_view text) {
  if (text == "exported") return UsageSource::kExported;
  if (text == "recomputed") return UsageSource::kRecomputed;
  return std::nullopt;
}

double weighted_usage(const JournalRecord& rec, const Weights& w) {
  return w.download * rec.downloads + w.citation * rec.citations + w.authorship * rec.authorships;
}

Weights dynamic_weights(const Package& pkg) {
  double downloads = 0, citations = 0, authorships = 0;
  for (const auto& rec : pkg.records) {
    downloads += rec.downloads;
    citations += rec.citations;
    authorships += rec.authorships;
  }
  if (citations == 0) throw Error(ErrorCode::kDegenerateDenominator, "package has no citations");
  if (authorships == 0) throw Error(ErrorCode::kDegenerateDenominator, "package has no authorships");
  return Weights{1.0, downloads / citations, downloads / authorships};
}

double current_year_usage(const JournalRecord& rec) {
  const double remaining = 100 - (rec.oa_percent + rec.backfile_percent);
  if (remaining <= 0) return 0;
  return remaining * rec.usage / 100;
}

bool fulfillment_overlaps(const JournalRecord& rec) {
  return rec.oa_percent + rec.backfile_percent > 100;
}

double instant_fill_percent(const JournalRecord& rec, double total_weighted_usage) {
  if (!(total_weighted_usage > 0)) {
    throw Error(ErrorCode::kZeroPackageUsage, "package total weighted usage is zero");
  }
  return 100 * current_year_usage(rec) / total_weighted_usage;
}

std::optional<double> normalized_if_cost(const JournalRecord& rec, double if_percent) {
  if (!(if_percent > 0)) return std::nullopt;
  return rec.price / if_percent;
}

std::optional<double> effective_cpu(const JournalRecord& rec) {
  if (rec.cpu) return rec.cpu;
  if (rec.usage > 0) return rec.price / rec.usage;
  return std::nullopt;
}

namespace {

bool ranks_complete(const Package& pkg) {
  std::vector<bool> seen(pkg.n() + 1, false);
  for (const auto& rec : pkg.records) {
    if (!rec.cpu_rank) return false;
    const int r = *rec.cpu_rank;
    if (r < 1 || static_cast<std::size_t>(r) > pkg.n() || seen[r]) return false;
    seen[r] = true;
  }
  return true;
}

std::vector<int> ranks_by_cpu(const Package& pkg) {
  std::vector<std::optional<double>> cpu(pkg.n());
  for (std::size_t i = 0; i < pkg.n(); ++i) cpu[i] = effective_cpu(pkg.records[i]);

  std::vector<std::size_t> order(pkg.n());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& ca = cpu[a];
    const auto& cb = cpu[b];
    if (ca.has_value() != cb.has_value()) return ca.has_value();
    if (ca && *ca != *cb) return *ca < *cb;
    const auto& ra = pkg.records[a];
    const auto& rb = pkg.records[b];
    if (ra.title != rb.title) return ra.title < rb.title;
    return ra.key < rb.key;
  });
  std::vector<int> ranks(pkg.n());
  for (std::size_t pos = 0; pos < order.size(); ++pos) ranks[order[pos]] = static_cast<int>(pos + 1);
  return ranks;
}

std::vector<int> settled_ranks(const Package& pkg) {
  if (ranks_complete(pkg)) {
    std::vector<int> ranks;
    ranks.reserve(pkg.n());
    for (const auto& rec : pkg.records) ranks.push_back(*rec.cpu_rank);
    return ranks;
  }
  return ranks_by_cpu(pkg);
}

}  // namespace

std::vector<std::pair<std::string, int>> compute_cpu_ranks(const Package& pkg) {
  auto ranks = settled_ranks(pkg);
  std::vector<std::pair<std::string, int>> out;
  out.reserve(pkg.n());
  for (std::size_t i = 0; i < pkg.n(); ++i) out.emplace_back(pkg.records[i].key, ranks[i]);
  return out;
}

PackageMetrics evaluate(const Package& pkg) {
  PackageMetrics m;
  m.total_weighted_usage = sum_usage(pkg);
  if (pkg.empty()) return m;
  if (!(m.total_weighted_usage > 0)) {
    throw Error(ErrorCode::kZeroPackageUsage, "package total weighted usage is zero");
  }

  const auto ranks = settled_ranks(pkg);
  m.records.reserve(pkg.n());
  for (std::size_t i = 0; i < pkg.n(); ++i) {
    const auto& rec = pkg.records[i];
    RecordMetrics r;
    r.usage = rec.usage;
    r.cpu = effective_cpu(rec);
    r.cpu_rank = ranks[i];
    r.current_year_usage = current_year_usage(rec);
    r.if_percent = instant_fill_percent(rec, m.total_weighted_usage);
    r.normalized_if_cost = normalized_if_cost(rec, r.if_percent);
    if (fulfillment_overlaps(rec)) {
      m.warnings.push_back(Warning{WarningKind::kOverlappingFulfillment, rec.key, "", std::nullopt,
                                   "open access and backfile exceed 100%; current-year usage clamped to 0"});
    }
    m.package_if_percent += r.if_percent;
    m.records.push_back(r);
  }
  return m;
}

Package reweighted(Package pkg, const Weights& w) {
  for (auto& rec : pkg.records) {
    rec.usage = weighted_usage(rec, w);
    rec.cpu = rec.usage > 0 ? std::optional<double>(rec.price / rec.usage) : std::nullopt;
    rec.cpu_rank.reset();
  }
  const auto ranks = ranks_by_cpu(pkg);
  for (std::size_t i = 0; i < pkg.n(); ++i) pkg.records[i].cpu_rank = ranks[i];
  pkg.total_weighted_usage = sum_usage(pkg);
  return pkg;
}

PackageMetrics recompute_all(const Package& pkg, const Weights& w) {
  return evaluate(reweighted(pkg, w));
}

Package settle(Package pkg, UsageSource source, const Weights& w) {
  if (source == UsageSource::kRecomputed) return reweighted(std::move(pkg), w);
  const auto ranks = settled_ranks(pkg);
  for (std::size_t i = 0; i < pkg.n(); ++i) pkg.records[i].cpu_rank = ranks[i];
  pkg.total_weighted_usage = sum_usage(pkg);
  return pkg;
}

}  // namespace unsubx
