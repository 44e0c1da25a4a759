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
// unsubx: batch analysis of a journal package export.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "unsubx.h"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitData = 1;
constexpr int kExitUsage = 2;

// Metric stems accepted by unsubx_set_filter, paired with their flag spelling.
struct RangeFlag {
  const char* stem;
  const char* flag;
  std::optional<double> lo;
  std::optional<double> hi;
};

struct Options {
  std::string input;
  bool sample = false;
  std::vector<RangeFlag> ranges = {
      {"price", "price", {}, {}},         {"cpu_rank", "cpu-rank", {}, {}},
      {"downloads", "downloads", {}, {}}, {"citations", "citations", {}, {}},
      {"authorships", "authorships", {}, {}}, {"usage", "usage", {}, {}},
      {"oa_percent", "oa-percent", {}, {}}};
  std::string statuses;
  std::vector<std::string> edits;
  std::string weights;
  std::string usage_source;
  std::string out_dir;
  std::string export_path;
  std::string format = "table";
};

struct PackageDeleter {
  void operator()(unsubx_package* p) const { unsubx_free(p); }
};
using PackagePtr = std::unique_ptr<unsubx_package, PackageDeleter>;

struct CString {
  char* p = nullptr;
  ~CString() { unsubx_string_free(p); }
  std::string str() const { return p == nullptr ? std::string() : std::string(p); }
};

// Failure with its exit code; the message has already been formatted.
struct Failure {
  int code;
  std::string message;
};

int exit_code_for(unsubx_status status) {
  switch (status) {
    case UNSUBX_E_INVALID_ARGUMENT:
    case UNSUBX_E_INVALID_RANGE:
    case UNSUBX_E_UNKNOWN_KEY:
    case UNSUBX_E_AMBIGUOUS:
    case UNSUBX_E_UNKNOWN_CHART:
      return kExitUsage;
    default:
      return kExitData;
  }
}

void check(unsubx_status status, const std::string& context) {
  if (status == UNSUBX_OK) return;
  throw Failure{exit_code_for(status), context + ": " + unsubx_last_error()};
}

json fetch(unsubx_status (*call)(const unsubx_package*, char**), const unsubx_package* pkg,
           const std::string& context) {
  CString s;
  check(call(pkg, &s.p), context);
  return json::parse(s.str());
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string format_bound(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void print_table(std::ostream& out, const json& summary, const json& metrics, std::size_t view_n) {
  out << "journals: " << metrics["n"].get<std::size_t>() << " (in view: " << view_n << ")\n";
  out << "total weighted usage: " << format_number(metrics["total_weighted_usage"].get<double>()) << "\n";
  out << "package IF%: " << format_number(metrics["package_if_percent"].get<double>()) << "\n\n";

  char line[160];
  std::snprintf(line, sizeof line, "%-8s %10s %16s %10s %16s\n", "status", "titles", "dollars", "view", "view dollars");
  out << line;
  for (const char* label : {"TRUE", "FALSE", "MAYBE", "BLANK", "total"}) {
    const auto& p = summary["package"][label];
    const auto& v = summary["view"][label];
    std::snprintf(line, sizeof line, "%-8s %10zu %16s %10zu %16s\n", label, p["titles"].get<std::size_t>(),
                  format_number(p["dollars"].get<double>()).c_str(), v["titles"].get<std::size_t>(),
                  format_number(v["dollars"].get<double>()).c_str());
    out << line;
  }
}

void write_file(const std::filesystem::path& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  out.close();
  if (!out) throw Failure{kExitData, "cannot write " + path.string()};
}

int run(const Options& opt) {
  unsubx_package* raw = nullptr;
  if (opt.sample) {
    check(unsubx_open_sample(&raw), "sample");
  } else {
    check(unsubx_open_file(opt.input.c_str(), &raw), opt.input);
  }
  PackagePtr pkg(raw);

  if (!opt.usage_source.empty()) {
    check(unsubx_set_usage_source(pkg.get(), opt.usage_source == "recomputed" ? UNSUBX_USAGE_RECOMPUTED
                                                                               : UNSUBX_USAGE_EXPORTED),
          "--usage");
  }
  if (opt.weights == "dynamic") {
    check(unsubx_set_dynamic_weights(pkg.get()), "--weights");
  } else if (!opt.weights.empty()) {
    std::vector<double> w;
    std::stringstream in(opt.weights);
    std::string part;
    while (std::getline(in, part, ',')) {
      try {
        std::size_t used = 0;
        w.push_back(std::stod(part, &used));
        if (used != part.size()) w.clear();
      } catch (const std::exception&) {
        w.clear();
        break;
      }
    }
    if (w.size() != 3) throw Failure{kExitUsage, "--weights: expected d,c,a or 'dynamic', got '" + opt.weights + "'"};
    check(unsubx_set_weights(pkg.get(), w[0], w[1], w[2]), "--weights");
  }

  json edits = json::array();
  for (const auto& edit : opt.edits) {
    const auto eq = edit.rfind('=');
    if (eq == std::string::npos || eq == 0) {
      throw Failure{kExitUsage, "--set: expected KEY=STATUS, got '" + edit + "'"};
    }
    const std::string target = edit.substr(0, eq);
    const std::string status = edit.substr(eq + 1);
    CString key;
    check(unsubx_resolve(pkg.get(), target.c_str(), &key.p), "--set");
    check(unsubx_set_status(pkg.get(), key.p, status.c_str()), "--set " + target);
    edits.push_back({{"key", key.str()}, {"status", status}});
  }

  std::string query;
  for (const auto& r : opt.ranges) {
    if (r.lo) query += std::string(query.empty() ? "" : "&") + r.stem + "_min=" + format_bound(*r.lo);
    if (r.hi) query += std::string(query.empty() ? "" : "&") + r.stem + "_max=" + format_bound(*r.hi);
  }
  if (!opt.statuses.empty()) query += std::string(query.empty() ? "" : "&") + "statuses=" + opt.statuses;
  check(unsubx_set_filter(pkg.get(), query.c_str()), "filter");

  const json summary = fetch(unsubx_summary_json, pkg.get(), "summary");
  const json metrics = fetch(unsubx_metrics_json, pkg.get(), "metrics");
  const json warnings = fetch(unsubx_validation_json, pkg.get(), "validation");
  const std::size_t view_n = unsubx_view_size(pkg.get());

  json charts = json::array();
  if (!opt.out_dir.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(opt.out_dir, ec);
    if (ec) throw Failure{kExitData, "cannot create " + opt.out_dir + ": " + ec.message()};
    CString catalog_text;
    check(unsubx_catalog_json(&catalog_text.p), "catalog");
    for (const auto& entry : json::parse(catalog_text.str())) {
      const auto id = entry["chart_id"].get<std::string>();
      CString doc;
      check(unsubx_chart_json(pkg.get(), id.c_str(), &doc.p), "chart " + id);
      const auto path = std::filesystem::path(opt.out_dir) / (id + ".json");
      write_file(path, json::parse(doc.str()).dump(2) + "\n");
      charts.push_back(path.string());
    }
  }

  if (!opt.export_path.empty()) {
    CString data;
    std::size_t len = 0;
    check(unsubx_export(pkg.get(), nullptr, &data.p, &len), "export");
    write_file(opt.export_path, std::string_view(data.p, len));
  }

  if (!warnings.empty()) std::cerr << "unsubx: " << warnings.size() << " validation warning(s)\n";
  if (opt.format == "json") {
    json out = {{"n", metrics["n"]},
                {"view_n", view_n},
                {"total_weighted_usage", metrics["total_weighted_usage"]},
                {"package_if_percent", metrics["package_if_percent"]},
                {"weights", metrics["weights"]},
                {"usage_source", metrics["usage_source"]},
                {"summary", summary},
                {"edits", edits},
                {"warnings", warnings},
                {"charts", charts}};
    if (!opt.export_path.empty()) out["export"] = opt.export_path;
    std::cout << out.dump(2) << "\n";
  } else {
    print_table(std::cout, summary, metrics, view_n);
    for (const auto& c : charts) std::cout << "wrote " << c.get<std::string>() << "\n";
    if (!opt.export_path.empty()) std::cout << "wrote " << opt.export_path << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  CLI::App app{"Analyze a journal package export: summary table, chart documents and edited CSV."};
  app.set_version_flag("--version", unsubx_version());

  auto* input = app.add_option("input", opt.input, "Export CSV to analyze");
  auto* sample = app.add_flag("--sample", opt.sample, "Use the built-in 431-journal demo package");
  input->excludes(sample);
  sample->excludes(input);

  for (auto& r : opt.ranges) {
    app.add_option(std::string("--") + r.flag + "-min", r.lo, std::string("Lower bound on ") + r.stem)
        ->group("Filters");
    app.add_option(std::string("--") + r.flag + "-max", r.hi, std::string("Upper bound on ") + r.stem)
        ->group("Filters");
  }
  app.add_option("--statuses", opt.statuses, "Comma-separated statuses to keep: TRUE,FALSE,MAYBE,BLANK")
      ->group("Filters");

  app.add_option("--set", opt.edits, "Set a decision: KEY=STATUS, where KEY is a row key or exact title")
      ->expected(1)
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  app.add_option("--weights", opt.weights, "Usage weights d,c,a or 'dynamic' (implies recomputed usage)");
  app.add_option("--usage", opt.usage_source, "Usage column driving metrics")
      ->check(CLI::IsMember({"exported", "recomputed"}));
  app.add_option("--out-dir", opt.out_dir, "Write the twelve chart documents as {chart_id}.json");
  app.add_option("--export", opt.export_path, "Write the edited CSV here");
  app.add_option("--format", opt.format, "Summary output format")->check(CLI::IsMember({"table", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }
  if (!opt.sample && opt.input.empty()) {
    std::cerr << "unsubx: give an input file or --sample\n" << app.help();
    return kExitUsage;
  }

  try {
    return run(opt);
  } catch (const Failure& f) {
    std::cerr << "unsubx: " << f.message << "\n";
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "unsubx: " << e.what() << "\n";
    return kExitData;
  }
}
