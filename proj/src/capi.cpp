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
#include "unsubx.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <map>
#include <new>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "unsubx/charts.hpp"
#include "unsubx/decisions.hpp"
#include "unsubx/filters.hpp"
#include "unsubx/ingest.hpp"
#include "unsubx/json_io.hpp"
#include "unsubx/metrics.hpp"

struct unsubx_package {
  unsubx::Package source;  // as parsed, with decisions applied
  unsubx::Package settled;
  unsubx::PackageMetrics metrics;
  unsubx::Weights weights;
  unsubx::UsageSource usage_source = unsubx::UsageSource::kExported;
  unsubx::FilterSpec filter;
  unsubx::EditLog edits;
  std::vector<unsubx::Warning> validation;

  // Reruns the derivation chain; leaves the handle untouched on failure.
  void refresh(const unsubx::Weights& w, unsubx::UsageSource src) {
    unsubx::Package next = unsubx::settle(source, src, w);
    unsubx::PackageMetrics m = unsubx::evaluate(next);
    settled = std::move(next);
    metrics = std::move(m);
    weights = w;
    usage_source = src;
  }
};

namespace {

using nlohmann::json;

struct LastError {
  std::string message;
  std::string json_text = "{}";
};

LastError& last_error() {
  thread_local LastError e;
  return e;
}

void clear_error() {
  last_error().message.clear();
  last_error().json_text = "{}";
}

unsubx_status fail(unsubx_status status, const std::string& message, json detail = json::object()) {
  detail["error"] = unsubx_status_name(status);
  detail["message"] = message;
  last_error().message = message;
  last_error().json_text = detail.dump();
  return status;
}

unsubx_status status_of(unsubx::ErrorCode code) {
  using unsubx::ErrorCode;
  switch (code) {
    case ErrorCode::kInvalidArgument: return UNSUBX_E_INVALID_ARGUMENT;
    case ErrorCode::kEmptyFile: return UNSUBX_E_EMPTY_FILE;
    case ErrorCode::kMissingRequiredColumn: return UNSUBX_E_MISSING_COLUMN;
    case ErrorCode::kDuplicateHeader: return UNSUBX_E_DUPLICATE_HEADER;
    case ErrorCode::kRowParse: return UNSUBX_E_ROW_PARSE;
    case ErrorCode::kUnknownKey: return UNSUBX_E_UNKNOWN_KEY;
    case ErrorCode::kInvalidRange: return UNSUBX_E_INVALID_RANGE;
    case ErrorCode::kEmptyPackage: return UNSUBX_E_EMPTY_PACKAGE;
    case ErrorCode::kEmptyInput: return UNSUBX_E_INVALID_ARGUMENT;
    case ErrorCode::kUnknownChart: return UNSUBX_E_UNKNOWN_CHART;
    case ErrorCode::kDegenerateDenominator: return UNSUBX_E_DEGENERATE_DENOMINATOR;
    case ErrorCode::kZeroPackageUsage: return UNSUBX_E_ZERO_PACKAGE_USAGE;
  }
  return UNSUBX_E_INTERNAL;
}

// Runs `body`, translating exceptions into status codes.
template <typename Body>
unsubx_status guard(Body&& body) {
  clear_error();
  try {
    return body();
  } catch (const unsubx::Error& e) {
    const auto status = status_of(e.code());
    json detail = unsubx::error_json(e);
    detail.erase("error");
    detail.erase("message");
    return fail(status, e.what(), std::move(detail));
  } catch (const std::bad_alloc&) {
    return fail(UNSUBX_E_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(UNSUBX_E_INTERNAL, e.what());
  }
}

char* copy_out(std::string_view s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p == nullptr) throw std::bad_alloc();
  std::memcpy(p, s.data(), s.size());
  p[s.size()] = '\0';
  return p;
}

unsubx_status emit(const json& j, char** out) {
  *out = copy_out(j.dump());
  return UNSUBX_OK;
}

unsubx_status open_package(unsubx::Package pkg, unsubx_package** out) {
  auto handle = std::make_unique<unsubx_package>();
  handle->validation = unsubx::validate_package(pkg).warnings;
  handle->source = std::move(pkg);
  handle->refresh(unsubx::Weights::defaults(), unsubx::UsageSource::kExported);
  *out = handle.release();
  return UNSUBX_OK;
}

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

std::string percent_decode(std::string_view s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '+') {
      out.push_back(' ');
    } else if (s[i] == '%' && i + 2 < s.size() && hex_value(s[i + 1]) >= 0 && hex_value(s[i + 2]) >= 0) {
      out.push_back(static_cast<char>(hex_value(s[i + 1]) * 16 + hex_value(s[i + 2])));
      i += 2;
    } else {
      out.push_back(s[i]);
    }
  }
  return out;
}

std::multimap<std::string, std::string> parse_query(std::string_view q) {
  std::multimap<std::string, std::string> params;
  while (!q.empty()) {
    const auto amp = q.find('&');
    const auto part = q.substr(0, amp);
    if (!part.empty()) {
      const auto eq = part.find('=');
      params.emplace(percent_decode(part.substr(0, eq)),
                     eq == std::string_view::npos ? std::string() : percent_decode(part.substr(eq + 1)));
    }
    if (amp == std::string_view::npos) break;
    q.remove_prefix(amp + 1);
  }
  return params;
}

#define UNSUBX_REQUIRE(cond, what) \
  do {                             \
    if (!(cond)) return fail(UNSUBX_E_INVALID_ARGUMENT, what); \
  } while (0)

}  // namespace

extern "C" {

const char* unsubx_version(void) { return "1.0.0"; }

const char* unsubx_last_error(void) { return last_error().message.c_str(); }

const char* unsubx_last_error_json(void) { return last_error().json_text.c_str(); }

const char* unsubx_status_name(unsubx_status status) {
  switch (status) {
    case UNSUBX_OK: return "UNSUBX_OK";
    case UNSUBX_E_INVALID_ARGUMENT: return "UNSUBX_E_INVALID_ARGUMENT";
    case UNSUBX_E_IO: return "UNSUBX_E_IO";
    case UNSUBX_E_EMPTY_FILE: return "UNSUBX_E_EMPTY_FILE";
    case UNSUBX_E_MISSING_COLUMN: return "UNSUBX_E_MISSING_COLUMN";
    case UNSUBX_E_DUPLICATE_HEADER: return "UNSUBX_E_DUPLICATE_HEADER";
    case UNSUBX_E_ROW_PARSE: return "UNSUBX_E_ROW_PARSE";
    case UNSUBX_E_UNKNOWN_KEY: return "UNSUBX_E_UNKNOWN_KEY";
    case UNSUBX_E_AMBIGUOUS: return "UNSUBX_E_AMBIGUOUS";
    case UNSUBX_E_INVALID_RANGE: return "UNSUBX_E_INVALID_RANGE";
    case UNSUBX_E_EMPTY_PACKAGE: return "UNSUBX_E_EMPTY_PACKAGE";
    case UNSUBX_E_UNKNOWN_CHART: return "UNSUBX_E_UNKNOWN_CHART";
    case UNSUBX_E_DEGENERATE_DENOMINATOR: return "UNSUBX_E_DEGENERATE_DENOMINATOR";
    case UNSUBX_E_ZERO_PACKAGE_USAGE: return "UNSUBX_E_ZERO_PACKAGE_USAGE";
    case UNSUBX_E_INTERNAL: return "UNSUBX_E_INTERNAL";
  }
  return "UNSUBX_E_UNKNOWN";
}

unsubx_status unsubx_open_file(const char* path, unsubx_package** out) {
  return guard([&] {
    UNSUBX_REQUIRE(path != nullptr && out != nullptr, "path and out must be non-null");
    std::ifstream in(path, std::ios::binary);
    if (!in) return fail(UNSUBX_E_IO, std::string("cannot open ") + path);
    std::ostringstream bytes;
    bytes << in.rdbuf();
    if (in.bad()) return fail(UNSUBX_E_IO, std::string("cannot read ") + path);
    return open_package(unsubx::parse_export(bytes.str()), out);
  });
}

unsubx_status unsubx_open_buffer(const char* data, size_t len, unsubx_package** out) {
  return guard([&] {
    UNSUBX_REQUIRE(out != nullptr && (data != nullptr || len == 0), "data and out must be non-null");
    return open_package(unsubx::parse_export(std::string_view(data == nullptr ? "" : data, len)), out);
  });
}

unsubx_status unsubx_open_sample(unsubx_package** out) {
  return guard([&] {
    UNSUBX_REQUIRE(out != nullptr, "out must be non-null");
    return open_package(unsubx::load_sample(), out);
  });
}

void unsubx_free(unsubx_package* pkg) { delete pkg; }

size_t unsubx_size(const unsubx_package* pkg) { return pkg == nullptr ? 0 : pkg->source.n(); }

size_t unsubx_view_size(const unsubx_package* pkg) {
  return pkg == nullptr ? 0 : unsubx::apply(pkg->settled, pkg->filter).size();
}

unsubx_status unsubx_set_weights(unsubx_package* pkg, double download, double citation, double authorship) {
  return guard([&] {
    UNSUBX_REQUIRE(pkg != nullptr, "pkg must be non-null");
    const unsubx::Weights w{download, citation, authorship};
    UNSUBX_REQUIRE(w.valid(), "weights must be finite and non-negative");
    pkg->refresh(w, unsubx::UsageSource::kRecomputed);
    return UNSUBX_OK;
  });
}

unsubx_status unsubx_set_dynamic_weights(unsubx_package* pkg) {
  return guard([&] {
    UNSUBX_REQUIRE(pkg != nullptr, "pkg must be non-null");
    pkg->refresh(unsubx::dynamic_weights(pkg->source), unsubx::UsageSource::kRecomputed);
    return UNSUBX_OK;
  });
}

unsubx_status unsubx_set_usage_source(unsubx_package* pkg, unsubx_usage_source source) {
  return guard([&] {
    UNSUBX_REQUIRE(pkg != nullptr, "pkg must be non-null");
    UNSUBX_REQUIRE(source == UNSUBX_USAGE_EXPORTED || source == UNSUBX_USAGE_RECOMPUTED, "unknown usage source");
    pkg->refresh(pkg->weights,
                 source == UNSUBX_USAGE_RECOMPUTED ? unsubx::UsageSource::kRecomputed : unsubx::UsageSource::kExported);
    return UNSUBX_OK;
  });
}

unsubx_status unsubx_resolve(const unsubx_package* pkg, const char* key_or_title, char** key_out) {
  return guard([&] {
    UNSUBX_REQUIRE(pkg != nullptr && key_or_title != nullptr && key_out != nullptr, "arguments must be non-null");
    const std::string_view needle(key_or_title);
    if (pkg->source.find(needle) != nullptr) {
      *key_out = copy_out(needle);
      return UNSUBX_OK;
    }
    const auto matches = unsubx::find_exact_title(pkg->source, needle);
    if (matches.empty()) {
      return fail(UNSUBX_E_UNKNOWN_KEY, "no journal with key or title '" + std::string(needle) + "'");
    }
    if (matches.size() > 1) {
      std::string message = "title '" + std::string(needle) + "' is ambiguous; candidates:";
      json candidates = json::array();
      for (const auto& m : matches) {
        message += "\n  " + m.key + "  " + m.title;
        candidates.push_back({{"key", m.key}, {"title", m.title}});
      }
      return fail(UNSUBX_E_AMBIGUOUS, message, {{"candidates", candidates}});
    }
    *key_out = copy_out(matches.front().key);
    return UNSUBX_OK;
  });
}

unsubx_status unsubx_set_status(unsubx_package* pkg, const char* key, const char* status) {
  return guard([&] {
    UNSUBX_REQUIRE(pkg != nullptr && key != nullptr && status != nullptr, "arguments must be non-null");
    const auto parsed = unsubx::parse_status(status);
    if (!parsed) {
      return fail(UNSUBX_E_INVALID_ARGUMENT,
                  std::string("unknown status '") + status + "' (expected TRUE, FALSE, MAYBE or BLANK)");
    }
    // Decisions never feed the numeric chain, so both copies take the same
    // edit and no recomputation is needed.
    unsubx::EditLog scratch;
    auto settled = unsubx::set_status(pkg->settled, key, *parsed, scratch);
    pkg->source = unsubx::set_status(std::move(pkg->source), key, *parsed, pkg->edits);
    pkg->settled = std::move(settled);
    return UNSUBX_OK;
  });
}

unsubx_status unsubx_set_filter(unsubx_package* pkg, const char* query) {
  return guard([&] {
    UNSUBX_REQUIRE(pkg != nullptr, "pkg must be non-null");
    pkg->filter = unsubx::FilterSpec::from_query(parse_query(query == nullptr ? "" : query));
    return UNSUBX_OK;
  });
}

unsubx_status unsubx_summary_json(const unsubx_package* pkg, char** out) {
  return guard([&] {
    UNSUBX_REQUIRE(pkg != nullptr && out != nullptr, "arguments must be non-null");
    return emit({{"package", unsubx::to_json(unsubx::summarize(pkg->settled))},
                 {"view", unsubx::to_json(unsubx::summarize(unsubx::apply(pkg->settled, pkg->filter)))}},
                out);
  });
}

unsubx_status unsubx_metrics_json(const unsubx_package* pkg, char** out) {
  return guard([&] {
    UNSUBX_REQUIRE(pkg != nullptr && out != nullptr, "arguments must be non-null");
    return emit({{"n", pkg->settled.n()},
                 {"total_weighted_usage", pkg->metrics.total_weighted_usage},
                 {"package_if_percent", pkg->metrics.package_if_percent},
                 {"weights", unsubx::to_json(pkg->weights)},
                 {"usage_source", pkg->usage_source == unsubx::UsageSource::kRecomputed ? "recomputed" : "exported"},
                 {"warnings", unsubx::to_json(pkg->metrics.warnings)}},
                out);
  });
}

unsubx_status unsubx_journals_json(const unsubx_package* pkg, char** out) {
  return guard([&] {
    UNSUBX_REQUIRE(pkg != nullptr && out != nullptr, "arguments must be non-null");
    const auto view = unsubx::apply(pkg->settled, pkg->filter);
    json rows = json::array();
    for (auto row : view.rows) rows.push_back(unsubx::to_json(pkg->settled.records[row], pkg->metrics.records[row]));
    return emit(rows, out);
  });
}

unsubx_status unsubx_validation_json(const unsubx_package* pkg, char** out) {
  return guard([&] {
    UNSUBX_REQUIRE(pkg != nullptr && out != nullptr, "arguments must be non-null");
    return emit(unsubx::to_json(pkg->validation), out);
  });
}

unsubx_status unsubx_chart_json(const unsubx_package* pkg, const char* chart_id, char** out) {
  return guard([&] {
    UNSUBX_REQUIRE(pkg != nullptr && chart_id != nullptr && out != nullptr, "arguments must be non-null");
    const auto view = unsubx::apply(pkg->settled, pkg->filter);
    return emit(unsubx::build_chart(view, std::string_view(chart_id), pkg->metrics).to_json(), out);
  });
}

unsubx_status unsubx_catalog_json(char** out) {
  return guard([&] {
    UNSUBX_REQUIRE(out != nullptr, "out must be non-null");
    return emit(unsubx::catalog_json(), out);
  });
}

unsubx_status unsubx_export(const unsubx_package* pkg, char** filename, char** data, size_t* len) {
  return guard([&] {
    UNSUBX_REQUIRE(pkg != nullptr, "pkg must be non-null");
    UNSUBX_REQUIRE(data == nullptr || len != nullptr, "len is required with data");
    auto file = unsubx::export_csv(pkg->settled);
    char* name = filename != nullptr ? copy_out(file.filename) : nullptr;
    if (data != nullptr) {
      try {
        *data = copy_out(file.bytes);
      } catch (...) {
        std::free(name);
        throw;
      }
      *len = file.bytes.size();
    }
    if (filename != nullptr) *filename = name;
    return UNSUBX_OK;
  });
}

void unsubx_string_free(char* s) { std::free(s); }

}  // extern "C"
