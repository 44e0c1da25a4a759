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

// Random filter specs for property tests.

#include <algorithm>
#include <cmath>

#include "generators.hpp"
#include "unsubx/filters.hpp"

namespace unsubx::testing {

inline FilterSpec random_spec(Rng& rng, const Package& pkg) {
  FilterSpec spec;
  if (pkg.empty()) return spec;
  const auto bounds = slider_bounds(pkg);
  for (auto m : kAllFilterMetrics) {
    if (pick(rng, 0, 2) != 0) continue;
    const auto [lo, hi] = bounds[static_cast<std::size_t>(m)];
    double a = uniform(rng, lo - 1, hi + 1);
    double b = uniform(rng, lo - 1, hi + 1);
    spec.range(m) = Range{std::min(a, b), std::max(a, b)};
  }
  if (pick(rng, 0, 1) == 0) {
    spec.statuses = StatusSet::none();
    for (auto s : kAllStatuses) {
      if (pick(rng, 0, 1)) spec.statuses.insert(s);
    }
  }
  return spec;
}

// Shrinks every range of `spec` and drops statuses at random.
inline FilterSpec tighten(Rng& rng, FilterSpec spec, const Package& pkg) {
  const auto bounds = slider_bounds(pkg);
  for (auto m : kAllFilterMetrics) {
    auto& r = spec.range(m);
    if (!r) {
      if (pick(rng, 0, 1)) continue;
      const auto [lo, hi] = bounds[static_cast<std::size_t>(m)];
      r = Range{lo, hi};
    }
    const double width = r->hi - r->lo;
    const double lo = r->lo + uniform(rng, 0, 0.5) * width;
    const double hi = r->hi - uniform(rng, 0, 0.5) * width;
    r = Range{lo, std::max(lo, hi)};
  }
  for (auto s : kAllStatuses) {
    if (pick(rng, 0, 3) == 0) spec.statuses.erase(s);
  }
  return spec;
}

inline FilterSpec conjunction(const FilterSpec& a, const FilterSpec& b) {
  FilterSpec out;
  for (auto m : kAllFilterMetrics) {
    const auto& ra = a.range(m);
    const auto& rb = b.range(m);
    if (ra && rb) {
      out.range(m) = Range{std::max(ra->lo, rb->lo), std::min(ra->hi, rb->hi)};
      if (out.range(m)->lo > out.range(m)->hi) out.range(m) = Range{INFINITY, INFINITY};  // matches nothing
    } else {
      out.range(m) = ra ? ra : rb;
    }
  }
  out.statuses = StatusSet::none();
  for (auto s : kAllStatuses) {
    if (a.statuses.contains(s) && b.statuses.contains(s)) out.statuses.insert(s);
  }
  return out;
}

inline bool subset(const View& a, const View& b) {
  return std::includes(b.rows.begin(), b.rows.end(), a.rows.begin(), a.rows.end());
}

}  // namespace unsubx::testing
